"""Fourier transforms: dense DFT, the QFT gate circuit, Hadamard transform,
abelian group transforms, and weak Fourier sampling on non-abelian groups.

Sign convention: ``F[a, b] = exp(+2 pi i a b / N) / sqrt(N)`` throughout,
so ``F = ifft`` with orthonormal scaling.

Non-abelian Fourier basis states are normalized as
``|chi_{i,jk}> = sqrt(d_i/|G|) sum_g rho_i(g)_{jk} |g>``. With the bare
``1/sqrt(|G|)`` prefactor these vectors would have norm ``1/sqrt(d_i)``
when ``d_i > 1`` (Schur orthogonality), so the extra ``sqrt(d_i)`` is needed
for an orthonormal basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .errors import DimensionMismatch
from .groups import AbelianGroup, Subgroup, character_table, explicit_irreps
from .statevector import QuantumState, RegisterLayout, apply_unitary, measurement_distribution

__all__ = [
    "HADAMARD",
    "Gate",
    "GateSequence",
    "dft_matrix",
    "controlled_phase",
    "swap_gate",
    "qft_circuit",
    "hadamard_all",
    "apply_gates",
    "apply_group_ft",
    "group_ft_matrix",
    "fourier_basis",
    "apply_nonabelian_ft",
    "rep_measurement_distribution",
    "weak_fourier_sampling_distribution",
]

HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
SWAP = np.eye(4, dtype=np.complex128)[[0, 2, 1, 3]]


@dataclass(frozen=True)
class Gate:
    name: str
    matrix: np.ndarray
    targets: tuple


@dataclass
class GateSequence:
    """Ordered one- and two-qubit gates on ``n_qubits`` qubits (qubit 0 most significant)."""

    n_qubits: int
    gates: list = field(default_factory=list)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def append(self, name, matrix, targets):
        targets = tuple(targets)
        if len(targets) > 2:
            raise ValueError("gates act on at most two qubits")
        self.gates.append(Gate(name, np.asarray(matrix, dtype=np.complex128), targets))

    def counts(self) -> dict:
        out: dict = {}
        for g in self.gates:
            out[g.name] = out.get(g.name, 0) + 1
        return out

    def unitary(self) -> np.ndarray:
        """Composed ``2^n x 2^n`` unitary, obtained by running the gates on every basis column."""
        n = self.n_qubits
        dim = 1 << n
        # an extra register carries the column index, so one pass transforms all columns
        layout = RegisterLayout((2,) * n + (max(dim, 2),))
        cols = np.eye(dim, max(dim, 2), dtype=np.complex128)
        st = QuantumState(layout, cols.reshape(-1).copy())
        apply_gates(st, self)
        return st.amplitudes.reshape(dim, -1)[:, :dim]


def dft_matrix(N: int) -> np.ndarray:
    if N < 1:
        raise ValueError("N must be positive")
    a = np.arange(N)
    return np.exp(2j * pi * (np.outer(a, a) % N) / N) / np.sqrt(N)


def controlled_phase(theta: float) -> np.ndarray:
    return np.diag([1, 1, 1, np.exp(1j * theta)]).astype(np.complex128)


def swap_gate() -> np.ndarray:
    return SWAP.copy()


def qft_circuit(n: int) -> GateSequence:
    """FFT-derived QFT on ``n`` qubits: composed unitary equals ``dft_matrix(2**n)``.

    Hadamard on each qubit followed by controlled phases ``2 pi / 2^(k+1)``
    from the less significant qubits, then the qubit order is reversed.
    Emits ``n(n+1)/2`` Hadamard/phase gates and ``floor(n/2)`` swaps.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    seq = GateSequence(n)
    for j in range(n):
        seq.append("H", HADAMARD, (j,))
        for k in range(j + 1, n):
            seq.append(f"CP(2pi/2^{k - j + 1})", controlled_phase(2 * pi / 2 ** (k - j + 1)), (j, k))
    for j in range(n // 2):
        seq.append("SWAP", SWAP, (j, n - 1 - j))
    return seq


def hadamard_all(n: int) -> GateSequence:
    if n < 1:
        raise ValueError("n must be >= 1")
    seq = GateSequence(n)
    for j in range(n):
        seq.append("H", HADAMARD, (j,))
    return seq


def apply_gates(state: QuantumState, seq: GateSequence, register: int | None = None) -> QuantumState:
    """Run ``seq``. With ``register`` given, that register (dimension ``2^n``)
    is split into qubits and gate targets refer to them; otherwise targets
    are registers of ``state`` itself."""
    if register is None:
        view, shift = state, 0
    else:
        view, shift = state.split_register(register, (2,) * seq.n_qubits), register
    for g in seq:
        apply_unitary(view, g.matrix, tuple(t + shift for t in g.targets), check=False)
    state.ops += len(seq) if view is not state else 0
    return state


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def apply_group_ft(state: QuantumState, G: AbelianGroup, register: int = 0, method: str = "fft",
                   inverse: bool = False) -> QuantumState:
    """Apply the DFT of each cyclic factor of ``G`` to its slot of ``register``.

    ``method`` selects ``"fft"`` (numpy FFT along each factor axis),
    ``"dense"`` (explicit ``dft_matrix`` per factor) or ``"circuit"`` (the
    QFT gate sequence; every factor must be a power of two). All three give
    the same unitary.
    """
    if state.layout.dims[register] != G.order:
        raise DimensionMismatch(f"register dimension {state.layout.dims[register]} != |G| = {G.order}")
    factors = [n for n in G.orders]
    nontrivial = [n for n in factors if n > 1]
    if not nontrivial:
        return state
    view = state.split_register(register, nontrivial) if len(nontrivial) > 1 or nontrivial[0] != G.order else state
    sub = range(register, register + len(nontrivial))
    if method == "fft":
        t = view.tensor()
        axes = tuple(sub)
        t[...] = np.fft.fftn(t, axes=axes, norm="ortho") if inverse else np.fft.ifftn(t, axes=axes, norm="ortho")
        for n in nontrivial:
            state.ops += len(qft_circuit(n.bit_length() - 1)) if _is_pow2(n) else 1
    elif method == "dense":
        for reg, n in zip(sub, nontrivial):
            F = dft_matrix(n)
            apply_unitary(view, F.conj().T if inverse else F, reg, check=False)
        state.ops += len(nontrivial)
    elif method == "circuit":
        if inverse:
            raise ValueError("circuit method implements the forward transform only")
        for reg, n in reversed(list(zip(sub, nontrivial))):
            if not _is_pow2(n):
                raise DimensionMismatch(f"circuit method needs power-of-two factors, got {n}")
            apply_gates(view, qft_circuit(n.bit_length() - 1), reg)
            if view is not state:
                state.ops += len(qft_circuit(n.bit_length() - 1))
    else:
        raise ValueError(f"unknown method {method!r}")
    return state


def group_ft_matrix(G: AbelianGroup) -> np.ndarray:
    """``F[l, g] = chi_l(g) / sqrt|G|`` built directly from the characters."""
    els = G.elements()
    F = np.empty((G.order, G.order), dtype=np.complex128)
    for i, l in enumerate(els):
        for j, g in enumerate(els):
            F[i, j] = np.exp(2j * pi * float(G.pairing(l, g)))
    return F / np.sqrt(G.order)


def fourier_basis(G):
    """Rows are the Fourier basis vectors ``|chi_{i,jk}>`` in the standard basis.

    Returns ``(B, blocks)`` where ``blocks[i]`` is the row slice belonging to
    irreducible representation ``i`` (ordered as in :func:`character_table`).
    """
    reps = explicit_irreps(G)
    order = reps[0].shape[0]
    rows, blocks, start = [], [], 0
    for R in reps:
        d = R.shape[1]
        rows.append(np.sqrt(d / order) * R.reshape(order, d * d).T)
        blocks.append(slice(start, start + d * d))
        start += d * d
    return np.vstack(rows), blocks


def apply_nonabelian_ft(state: QuantumState, G, register: int = 0, basis=None) -> QuantumState:
    """Rotate the Fourier basis of ``G`` into standard position on ``register``.

    ``basis`` may pass a precomputed ``fourier_basis(G)[0]`` for repeated use.
    """
    B = fourier_basis(G)[0] if basis is None else basis
    return apply_unitary(state, B.conj(), register, check=basis is None)


def rep_measurement_distribution(state: QuantumState, G, register: int = 0) -> np.ndarray:
    """Outcome distribution of the representation-label measurement, by explicit projection."""
    B, blocks = fourier_basis(G)
    st = state.copy()
    apply_unitary(st, B.conj(), register)
    p = measurement_distribution(st, register)
    return np.array([p[b].sum() for b in blocks])


def weak_fourier_sampling_distribution(G, K: Subgroup) -> np.ndarray:
    """``p(i) = (d_i/|G|) sum_{k in K} chi_i(k)`` for every irrep ``i``.

    This is the representation-label distribution for any coset state
    ``|gK>``; entries follow ``character_table(G).labels``.
    """
    table = character_table(G)
    G = table.group
    idx = sorted(K.elements)
    sums = table.values[:, idx].sum(axis=1)
    p = np.array(table.dims) / G.order * sums
    if np.abs(p.imag).max() > 1e-12 or p.real.min() < -1e-12:
        raise AssertionError("weak Fourier sampling produced an invalid distribution")
    p = np.clip(p.real, 0.0, None)
    return p
