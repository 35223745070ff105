"""Compare the compiled and numpy statevector kernels.

    python benchmarks/bench_kernels.py [--qubits 18] [--repeat 5]

Each row reports the best of ``--repeat`` runs per backend and the speedup
of the compiled kernels over the fallback. Outputs are checked for agreement
before timing.
"""

import argparse
import timeit

import numpy as np

from hsplab import kernels
from hsplab.fourier import HADAMARD, controlled_phase
from hsplab.statevector import _gather_plan


def cases(n_qubits: int, rng: np.random.Generator):
    dims = (2,) * n_qubits
    size = 1 << n_qubits
    psi = rng.normal(size=size) + 1j * rng.normal(size=size)
    psi /= np.linalg.norm(psi)
    mid = n_qubits // 2
    base1, off1 = _gather_plan(dims, (mid,))
    base2, off2 = _gather_plan(dims, (0, n_qubits - 1))
    cp = controlled_phase(np.pi / 8)
    half = 1 << (n_qubits // 2)
    fvals = rng.integers(0, half, size=size // half).astype(np.int64)

    def gate(U, base, off):
        def run(k):
            out = psi.copy()
            k.apply_matrix(out, U, base, off)
            return out
        return run

    yield "apply_matrix 1q", gate(HADAMARD, base1, off1)
    yield "apply_matrix 2q", gate(cp, base2, off2)
    yield "oracle_add", lambda k: k.oracle_add(psi, fvals, half, size // half, 1, half)
    yield "marginal", lambda k: k.marginal(psi, 1, half)

    def project(k):
        out = psi.copy()
        k.project(out, 1, half, 3)
        return out

    yield "project", project


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--qubits", type=int, default=18)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the numpy fallback is available")
    rng = np.random.default_rng(0)
    print(f"state size 2^{args.qubits}, best of {args.repeat}")
    print(f"{'kernel':<18}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, fn in cases(args.qubits, rng):
        outs = [np.asarray(fn(mod)) for mod in backends.values()]
        for o in outs[1:]:
            assert np.allclose(o, outs[0]), label
        times = {name: min(timeit.repeat(lambda m=mod: fn(m), number=1, repeat=args.repeat))
                 for name, mod in backends.items()}
        row = f"{label:<18}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
