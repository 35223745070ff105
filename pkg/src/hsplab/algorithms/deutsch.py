"""Deutsch-Jozsa constant-versus-balanced test with a single oracle query."""

from __future__ import annotations

import numpy as np

from ..fourier import HADAMARD, apply_gates, hadamard_all
from ..statevector import apply_oracle, apply_unitary, basis_state, measure_register
from ..trace import RunTrace


def constant_oracle(n: int, value: int = 0) -> np.ndarray:
    return np.full(1 << n, value & 1, dtype=np.int64)


def random_balanced_oracle(n: int, rng: np.random.Generator) -> np.ndarray:
    table = np.zeros(1 << n, dtype=np.int64)
    table[rng.choice(1 << n, size=1 << (n - 1), replace=False)] = 1
    return table


def deutsch_jozsa(n: int, oracle, rng: np.random.Generator):
    """``"constant"`` or ``"balanced"`` after one application of ``oracle``.

    The ancilla starts in ``|1>`` and is Hadamard-rotated to ``|->``, so the
    XOR oracle acts as the phase ``(-1)^f(x)``. After the second Hadamard
    layer the all-zero outcome has probability 1 for constant ``f`` and 0
    for balanced ``f``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    dim = 1 << n
    if callable(oracle):
        table = np.fromiter((oracle(x) for x in range(dim)), dtype=np.int64, count=dim)
    else:
        table = np.asarray(oracle, dtype=np.int64)
    if table.shape != (dim,) or not np.isin(table, (0, 1)).all():
        raise ValueError("oracle must be Boolean on n-bit inputs")
    st = basis_state((dim, 2), (0, 1))
    apply_gates(st, hadamard_all(n), 0)
    apply_unitary(st, HADAMARD, 1)
    apply_oracle(st, table)
    apply_gates(st, hadamard_all(n), 0)
    outcome, _ = measure_register(st, 0, rng)
    verdict = "constant" if outcome == 0 else "balanced"
    trace = RunTrace("deutsch_jozsa", choices={"n": n}, verdict=verdict)
    trace.absorb(st)
    trace.add_round(outcome=format(outcome, f"0{n}b"))
    return verdict, trace
