"""Exact statevector simulation over registers of arbitrary dimension.

A state lives on a product of registers with dimensions ``(d_1, ..., d_m)``;
the flat amplitude index is row-major, so register 0 is the most
significant digit. Unitaries, oracles and measurements mutate the state in
place and return it for chaining. Inner loops are delegated to
:mod:`hsplab.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NotUnitary, RangeError
from .groups import AbelianGroup, Subgroup

__all__ = [
    "DEFAULT_CAP",
    "RegisterLayout",
    "QuantumState",
    "basis_state",
    "uniform_state",
    "from_amplitudes",
    "apply_unitary",
    "apply_oracle",
    "apply_shift",
    "measure_register",
    "collapse",
    "measurement_distribution",
    "prepare_coset_state",
    "oracle_table",
]

DEFAULT_CAP = 1 << 22

UNITARY_TOL = 1e-10
NORM_TOL = 1e-9


@dataclass(frozen=True)
class RegisterLayout:
    dims: tuple
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise ValueError("layout needs at least one register")
        if any(d < 2 for d in dims):
            raise ValueError(f"register dimensions must be >= 2, got {dims}")
        if prod(dims) > self.cap:
            raise ValueError(f"total dimension {prod(dims)} exceeds cap {self.cap}")

    @property
    def size(self) -> int:
        return prod(self.dims)

    @property
    def strides(self) -> tuple:
        return _strides(self.dims)

    def __len__(self):
        return len(self.dims)


@lru_cache(maxsize=256)
def _strides(dims: tuple) -> tuple:
    out = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        out[k] = out[k + 1] * dims[k + 1]
    return tuple(out)


@dataclass(eq=False)
class QuantumState:
    """Normalized amplitudes over a :class:`RegisterLayout`.

    ``ops`` counts unitary applications (one per gate or transform) and
    ``oracle_calls`` counts black-box applications.
    """

    layout: RegisterLayout
    amplitudes: np.ndarray
    ops: int = field(default=0)
    oracle_calls: int = field(default=0)

    def __post_init__(self):
        if self.amplitudes.shape != (self.layout.size,):
            raise DimensionMismatch("amplitude vector does not match layout size")

    @property
    def dims(self) -> tuple:
        return self.layout.dims

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def tensor(self) -> np.ndarray:
        """View of the amplitudes with one axis per register."""
        return self.amplitudes.reshape(self.layout.dims)

    def copy(self) -> "QuantumState":
        return QuantumState(self.layout, self.amplitudes.copy(), self.ops, self.oracle_calls)

    def split_register(self, register: int, subdims) -> "QuantumState":
        """A state sharing this one's amplitude buffer, with ``register`` split
        into sub-registers (e.g. a ``2^n`` register into ``n`` qubits)."""
        subdims = tuple(subdims)
        d = self.layout.dims
        if prod(subdims) != d[register]:
            raise DimensionMismatch(f"{subdims} does not factor register of dimension {d[register]}")
        layout = RegisterLayout(d[:register] + subdims + d[register + 1 :], cap=self.layout.cap)
        return QuantumState(layout, self.amplitudes)


def _layout(layout) -> RegisterLayout:
    return layout if isinstance(layout, RegisterLayout) else RegisterLayout(tuple(layout))


def basis_state(layout, labels) -> QuantumState:
    layout = _layout(layout)
    labels = tuple(labels)
    if len(labels) != len(layout.dims) or any(not 0 <= x < d for x, d in zip(labels, layout.dims)):
        raise DimensionMismatch(f"labels {labels} do not fit layout {layout.dims}")
    amps = np.zeros(layout.size, dtype=np.complex128)
    amps[sum(x * s for x, s in zip(labels, layout.strides))] = 1.0
    return QuantumState(layout, amps)


def uniform_state(layout, register: int = 0, support: int | None = None) -> QuantumState:
    """Equal superposition on ``register``; every other register in ``|0>``.

    ``support`` restricts the superposition to labels ``0..support-1`` (used
    when a register is padded beyond the group it carries).
    """
    layout = _layout(layout)
    if not 0 <= register < len(layout.dims):
        raise IndexError(f"register {register} out of range")
    d = layout.dims[register] if support is None else support
    if not 1 <= d <= layout.dims[register]:
        raise DimensionMismatch(f"support {d} does not fit register of dimension {layout.dims[register]}")
    amps = np.zeros(layout.size, dtype=np.complex128)
    amps[np.arange(d) * layout.strides[register]] = 1 / np.sqrt(d)
    return QuantumState(layout, amps)


def from_amplitudes(layout, amplitudes, *, check: bool = True) -> QuantumState:
    layout = _layout(layout)
    amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
    st = QuantumState(layout, amps)
    if check and abs(st.norm() - 1) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm {st.norm()})")
    return st


@lru_cache(maxsize=512)
def _gather_plan(dims: tuple, targets: tuple):
    strides = _strides(dims)
    offsets = np.zeros(1, dtype=np.int64)
    for t in targets:
        offsets = (offsets[:, None] + np.arange(dims[t], dtype=np.int64)[None, :] * strides[t]).reshape(-1)
    base = np.zeros(1, dtype=np.int64)
    for k in range(len(dims)):
        if k not in targets:
            base = (base[:, None] + np.arange(dims[k], dtype=np.int64)[None, :] * strides[k]).reshape(-1)
    offsets.setflags(write=False)
    base.setflags(write=False)
    return base, offsets


def _check_unitary(U: np.ndarray) -> None:
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionMismatch(f"matrix of shape {U.shape} is not square")
    dev = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
    if dev > UNITARY_TOL:
        raise NotUnitary(f"matrix deviates from unitarity by {dev:.3g}")


def apply_unitary(state: QuantumState, matrix, targets, *, check: bool = True) -> QuantumState:
    """Contract ``matrix`` into the target registers.

    The matrix row/column index is mixed-radix over ``targets`` in the order
    given (first target most significant); non-target indices are untouched.
    """
    if isinstance(targets, (int, np.integer)):
        targets = (int(targets),)
    targets = tuple(int(t) for t in targets)
    dims = state.layout.dims
    if len(set(targets)) != len(targets) or any(not 0 <= t < len(dims) for t in targets):
        raise DimensionMismatch(f"bad target registers {targets}")
    U = np.ascontiguousarray(matrix, dtype=np.complex128)
    dT = prod(dims[t] for t in targets)
    if U.shape != (dT, dT):
        raise DimensionMismatch(f"matrix shape {U.shape} does not match target dimension {dT}")
    if check:
        _check_unitary(U)
    base, offsets = _gather_plan(dims, targets)
    kernels.apply_matrix(state.amplitudes, U, base, offsets)
    state.ops += 1
    return state


def oracle_table(f, domain_size: int):
    """Evaluate ``f`` on ``0..domain_size-1`` and relabel its distinct values
    contiguously in order of first appearance.

    Returns ``(codes, values)`` with ``values[codes[x]] == f(x)``.
    """
    codes = np.empty(domain_size, dtype=np.int64)
    seen: dict = {}
    values = []
    for x in range(domain_size):
        v = f(x)
        c = seen.get(v)
        if c is None:
            c = seen[v] = len(values)
            values.append(v)
        codes[x] = c
    return codes, values


def apply_oracle(state: QuantumState, f, input_register: int = 0, output_register: int = 1) -> QuantumState:
    """Basis permutation ``|x>|y> -> |x>|y + f(x) mod d_out>``.

    ``f`` is either a callable on input labels or a precomputed integer array
    of length ``d_in``.
    """
    dims = state.layout.dims
    dx, dy = dims[input_register], dims[output_register]
    if callable(f):
        fvals = np.fromiter((f(x) for x in range(dx)), dtype=np.int64, count=dx)
    else:
        fvals = np.ascontiguousarray(f, dtype=np.int64)
        if fvals.shape != (dx,):
            raise DimensionMismatch(f"oracle table has shape {fvals.shape}, expected ({dx},)")
    if fvals.size and (fvals.min() < 0 or fvals.max() >= dy):
        raise RangeError(f"oracle values must lie in [0, {dy})")
    strides = state.layout.strides
    state.amplitudes[:] = kernels.oracle_add(
        state.amplitudes, fvals, strides[input_register], dx, strides[output_register], dy
    )
    state.oracle_calls += 1
    return state


def apply_shift(state: QuantumState, group, g, register: int = 0) -> QuantumState:
    """Shift operator ``U(g)|h> = |h g>`` (``|h + g>`` for abelian groups)."""
    if state.layout.dims[register] != group.order:
        raise DimensionMismatch("register dimension must equal the group order")
    g = group.coerce(g)
    perm = np.array([group.index(group.mul(group.element(i), g)) for i in range(group.order)], dtype=np.int64)
    t = np.moveaxis(state.tensor(), register, 0)
    new = np.empty_like(t)
    new[perm] = t
    np.moveaxis(state.tensor(), register, 0)[...] = new
    state.ops += 1
    return state


def measurement_distribution(state: QuantumState, register: int) -> np.ndarray:
    """Exact Born marginal of one register."""
    dims = state.layout.dims
    return kernels.marginal(state.amplitudes, state.layout.strides[register], dims[register])


def collapse(state: QuantumState, register: int, outcome: int) -> float:
    """Project ``register`` onto ``outcome`` and renormalize; return its probability."""
    dims = state.layout.dims
    p = kernels.project(state.amplitudes, state.layout.strides[register], dims[register], int(outcome))
    if p <= 0:
        raise ValueError(f"outcome {outcome} has zero probability")
    state.amplitudes /= np.sqrt(p)
    return p


def measure_register(state: QuantumState, register: int, rng: np.random.Generator):
    """Sample an outcome by the Born rule and collapse the state onto it."""
    probs = measurement_distribution(state, register)
    probs = np.clip(probs, 0, None)
    outcome = int(rng.choice(len(probs), p=probs / probs.sum()))
    collapse(state, register, outcome)
    return outcome, state


def prepare_coset_state(G, K: Subgroup, g0) -> QuantumState:
    """``(1/sqrt|K|) sum_k |g0 k>`` on one register of dimension ``|G|``."""
    g0 = G.coerce(g0)
    layout = RegisterLayout((max(G.order, 2),))
    amps = np.zeros(layout.size, dtype=np.complex128)
    idx = [G.index(G.mul(g0, k)) for k in K.elements]
    amps[idx] = 1 / np.sqrt(len(idx))
    return QuantumState(layout, amps)


def group_register_dims(G) -> tuple:
    """Sub-register split of a ``|G|``-dimensional register by cyclic factor."""
    if isinstance(G, AbelianGroup):
        return G.orders
    return (G.order,)
