"""The standard hidden-subgroup method and the solvers built on it.

:func:`run_standard_method` draws one dual sample either by full
statevector simulation (``mode="simulate"``: superpose, query, measure the
value register, Fourier transform, measure) or directly from the exact
outcome distribution (``mode="exact"``: a uniform label from the
annihilator of the hidden subgroup). Both modes have the same distribution;
:func:`standard_method_distribution` computes it exactly for each.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import ceil, log2

import numpy as np

from . import numtheory as nt
from .errors import BudgetExhausted, NotCoprime, PromiseViolation
from .fourier import apply_gates, apply_group_ft, apply_nonabelian_ft, fourier_basis, hadamard_all
from .fourier import weak_fourier_sampling_distribution
from .groups import (
    AbelianGroup,
    Subgroup,
    _subgroup_from_elements,
    annihilator,
    character_table,
    kernel_of_character,
)
from .statevector import (
    RegisterLayout,
    apply_oracle,
    collapse,
    measure_register,
    measurement_distribution,
    uniform_state,
)
from .trace import RunTrace

__all__ = [
    "HiddenSubgroupInstance",
    "DualSample",
    "ShorConfig",
    "hidden_subgroup_by_enumeration",
    "run_standard_method",
    "standard_method_distribution",
    "solve_period_zn",
    "solve_order_shor",
    "shor_q",
    "shor_outcome_distribution",
    "order_candidates",
    "solve_simon",
    "gf2_nullspace",
    "gf2_rank",
    "reconstruct_normal_subgroup",
]

MODES = ("simulate", "exact")


@dataclass(frozen=True)
class HiddenSubgroupInstance:
    """A group, an oracle constant on left cosets of a hidden subgroup, and
    optionally that subgroup as ground truth for harnesses."""

    group: object
    oracle: object
    hidden: Subgroup | None = None

    def __call__(self, g):
        return self.oracle(g)

    @cached_property
    def table(self):
        """``(codes, values)``: oracle values by element index, relabeled contiguously."""
        G = self.group
        codes = np.empty(G.order, dtype=np.int64)
        seen: dict = {}
        values = []
        for i in range(G.order):
            v = self.oracle(G.element(i))
            c = seen.get(v)
            if c is None:
                c = seen[v] = len(values)
                values.append(v)
            codes[i] = c
        return codes, values

    @cached_property
    def subgroup(self) -> Subgroup:
        """The hidden subgroup: ground truth if given, else found by enumeration."""
        return self.hidden if self.hidden is not None else hidden_subgroup_by_enumeration(self.group, self.oracle)

    @classmethod
    def from_subgroup(cls, G, K: Subgroup, rng: np.random.Generator | None = None):
        """Oracle labelling each left coset ``gK`` (optionally with shuffled labels)."""
        label = {}
        order = list(range(G.order // K.order))
        if rng is not None:
            rng.shuffle(order)
        for g in G.elements():
            if g in label:
                continue
            tag = order[len(set(label.values()))]
            for k in K.elements:
                label[G.mul(g, k)] = tag
        return cls(G, lambda g, _l=label, _G=G: _l[_G.coerce(g)], K)

    def check_promise(self) -> None:
        """Opportunistic non-degeneracy check on the full oracle table.

        Fibres of a non-degenerate oracle are the cosets of one subgroup: all
        the same size, with the identity's fibre closed under multiplication.
        """
        G = self.group
        codes, values = self.table
        sizes = np.bincount(codes)
        if sizes.min() != sizes.max() or G.order % sizes[0]:
            raise PromiseViolation("oracle fibres have unequal sizes; no subgroup structure fits")
        e = codes[G.index(G.identity)]
        fibre = [G.element(i) for i in np.nonzero(codes == e)[0]]
        fset = set(fibre)
        for a in fibre:
            for b in fibre:
                if G.mul(a, b) not in fset:
                    raise PromiseViolation("fibre of the identity is not a subgroup")


def hidden_subgroup_by_enumeration(G, f) -> Subgroup:
    """Brute-force stabilizer ``{k : f(g k) = f(g) for all g}``."""
    vals = {g: f(g) for g in G.elements()}
    members = [k for k in G.elements() if all(vals[G.mul(g, k)] == vals[g] for g in G.elements())]
    return _subgroup_from_elements(G, members)


@dataclass(frozen=True)
class DualSample:
    label: object
    mode: str
    oracle_calls: int = 0
    steps: int = 0


def _abelian(G) -> AbelianGroup:
    if not isinstance(G, AbelianGroup):
        raise TypeError("the standard method with a full Fourier transform needs an AbelianGroup")
    return G


def _padded(codes: np.ndarray, dim: int) -> np.ndarray:
    """Extend an oracle table over padding basis states (which carry no amplitude)."""
    return codes if len(codes) == dim else np.concatenate([codes, np.zeros(dim - len(codes), dtype=codes.dtype)])


def _apply_ft(state, G: AbelianGroup, ft_method: str):
    if G.order == 1:
        # the padded register holds only |0>, on which the trivial transform is the identity
        return
    if ft_method == "hadamard":
        if any(n != 2 for n in G.orders):
            raise ValueError("hadamard transform needs G = (Z_2)^n")
        apply_gates(state, hadamard_all(G.rank), 0)
    else:
        apply_group_ft(state, G, 0, method=ft_method)


def run_standard_method(instance: HiddenSubgroupInstance, rng: np.random.Generator, mode: str = "simulate",
                        ft_method: str = "fft") -> DualSample:
    """One round of the standard method; returns a label from the dual group."""
    G = _abelian(instance.group)
    if mode == "exact":
        dual = annihilator(G, instance.subgroup).sorted_elements()
        return DualSample(dual[int(rng.integers(len(dual)))], "exact", oracle_calls=1)
    if mode != "simulate":
        raise ValueError(f"mode must be one of {MODES}")
    instance.check_promise()
    codes, values = instance.table
    st = uniform_state(RegisterLayout((max(G.order, 2), max(len(values), 2))), 0, G.order)
    st.ops += 1
    apply_oracle(st, _padded(codes, st.layout.dims[0]))
    measure_register(st, 1, rng)
    _apply_ft(st, G, ft_method)
    idx, _ = measure_register(st, 0, rng)
    return DualSample(G.element(idx), "simulate", oracle_calls=st.oracle_calls, steps=st.ops + st.oracle_calls)


def standard_method_distribution(instance: HiddenSubgroupInstance, mode: str = "simulate",
                                 ft_method: str = "fft") -> np.ndarray:
    """Exact label distribution (indexed like ``G.element``) of one round.

    In simulate mode every value-register outcome is followed through the
    pipeline with its Born weight, so the result is the exact distribution of
    the simulated sampler rather than an empirical estimate.
    """
    G = _abelian(instance.group)
    if mode == "exact":
        p = np.zeros(G.order)
        dual = annihilator(G, instance.subgroup)
        p[[G.index(l) for l in dual.elements]] = 1 / dual.order
        return p
    codes, values = instance.table
    st = uniform_state(RegisterLayout((max(G.order, 2), max(len(values), 2))), 0, G.order)
    apply_oracle(st, _padded(codes, st.layout.dims[0]))
    p_y = measurement_distribution(st, 1)
    out = np.zeros(st.layout.dims[0])
    for y, py in enumerate(p_y):
        if py <= 0:
            continue
        branch = st.copy()
        collapse(branch, 1, y)
        _apply_ft(branch, G, ft_method)
        out += py * measurement_distribution(branch, 0)
    return out[: G.order]


def _period_instance(N: int, f) -> HiddenSubgroupInstance:
    return HiddenSubgroupInstance(AbelianGroup((N,)), lambda g: f(g[0]))


def solve_period_zn(N: int, f, rng: np.random.Generator, budget: int = 64, mode: str = "simulate",
                    trace: RunTrace | None = None) -> int:
    """Period ``r`` of ``f`` on ``Z_N`` from repeated dual samples.

    Each measured ``c`` is reduced to ``c/N = lambda/r'`` in lowest terms;
    the denominators divide ``r`` and their lcm reaches ``r`` once the sampled
    ``lambda`` values share no common factor with it. Each lcm is checked
    with ``f(0) == f(L)``.
    """
    inst = _period_instance(N, f)
    f0 = f(0)
    L = 1
    for rnd in range(1, budget + 1):
        s = run_standard_method(inst, rng, mode)
        c = s.label[0]
        d = N // nt.gcd(c, N)
        L = nt.lcm(L, d)
        ok = f(L % N) == f0
        if trace is not None:
            trace.oracle_calls += s.oracle_calls + 1
            trace.steps += s.steps
            trace.add_round(round=rnd, c=c, fraction=[c // nt.gcd(c, N), d], lcm=L, verified=ok)
        if ok:
            return L
    raise BudgetExhausted(f"period not found within {budget} rounds")


@dataclass
class ShorConfig:
    q: int | None = None
    max_rounds: int = 32
    mode: str = "simulate"
    max_multiple: int = 4
    ft_method: str = "fft"


def shor_q(N: int) -> int:
    """Least power of two ``q >= N^2``."""
    q = 1
    while q < N * N:
        q <<= 1
    return q


def _modexp_codes(a: int, N: int, q: int) -> np.ndarray:
    """``a^x mod N`` for ``x < q`` relabeled 0..r-1 (the value is ``a^(x mod r)``)."""
    codes = np.empty(q, dtype=np.int64)
    seen: dict = {}
    v = 1 % N
    for x in range(q):
        c = seen.get(v)
        if c is None:
            c = seen[v] = len(seen)
        codes[x] = c
        v = v * a % N
    return codes


@lru_cache(maxsize=64)
def shor_outcome_distribution(N: int, a: int, q: int) -> np.ndarray:
    """Exact distribution of the measured label ``c`` in ``[0, q)``.

    Equals the register-0 marginal after the size-``q`` transform, which is
    the Born-weighted mixture over every value-register outcome.
    """
    codes = _modexp_codes(a, N, q)
    m = codes.max() + 1
    amps = np.zeros((m, q), dtype=np.complex128)
    amps[codes, np.arange(q)] = 1 / np.sqrt(q)
    amps = np.fft.ifft(amps, axis=1, norm="ortho")
    p = (np.abs(amps) ** 2).sum(axis=0)
    p.setflags(write=False)
    return p


def _reduce_to_order(a: int, N: int, e: int) -> int:
    for p in nt.prime_factors(e):
        while e % p == 0 and nt.mod_exp(a, e // p, N) == 1:
            e //= p
    return e


def order_candidates(c: int, q: int, N: int) -> list[int]:
    """Convergent denominators of ``c/q`` below ``N``."""
    return [cv.denominator for cv in nt.convergents(c, q) if cv.denominator < N]


def solve_order_shor(N: int, a: int, rng: np.random.Generator, config: ShorConfig | None = None,
                     trace: RunTrace | None = None) -> int:
    """Order of ``a`` modulo ``N`` by quantum period finding on ``[0, q)``.

    Candidates are convergent denominators of ``c/q`` (and small multiples,
    and lcms with earlier rounds' denominators); every candidate is checked
    with ``a^r = 1 mod N`` and a verified exponent is reduced to the least one.
    """
    config = config or ShorConfig()
    if N < 2:
        raise ValueError("N must be >= 2")
    if nt.gcd(a % N, N) != 1:
        raise NotCoprime(f"{a} is not coprime to {N}")
    if a % N == 1:
        if trace is not None:
            trace.add_round(round=0, note="a = 1 mod N", candidate=1, verified=True)
        return 1
    q = config.q or shor_q(N)
    if q & (q - 1):
        raise ValueError("q must be a power of two")
    G = AbelianGroup((q,))
    codes = _modexp_codes(a, N, q) if config.mode == "simulate" else None
    previous: list[int] = []
    for rnd in range(1, config.max_rounds + 1):
        if config.mode == "simulate":
            m = int(codes.max()) + 1
            st = uniform_state(RegisterLayout((q, max(m, 2))), 0)
            st.ops += 1
            apply_oracle(st, codes)
            measure_register(st, 1, rng)
            apply_group_ft(st, G, 0, method=config.ft_method)
            c, _ = measure_register(st, 0, rng)
            if trace is not None:
                trace.absorb(st)
        elif config.mode == "exact":
            p = shor_outcome_distribution(N, a % N, q)
            c = int(rng.choice(q, p=p / p.sum()))
            if trace is not None:
                trace.oracle_calls += 1
        else:
            raise ValueError(f"mode must be one of {MODES}")
        dens = order_candidates(c, q, N)
        tried = []
        found = None
        pool = [d * k for d in dens for k in range(1, config.max_multiple + 1)]
        pool += [nt.lcm(d, e) for d in dens for e in previous]
        for cand in sorted(set(x for x in pool if x > 0)):
            tried.append(cand)
            if nt.mod_exp(a, cand, N) == 1:
                found = _reduce_to_order(a, N, cand)
                break
        if trace is not None:
            trace.oracle_calls += len(tried)
            trace.add_round(round=rnd, c=c, q=q, convergents=dens, tried=tried, order=found)
        if found is not None:
            return found
        previous = sorted(set(previous + [d for d in dens if d > 1]))
    raise BudgetExhausted(f"order of {a} mod {N} not found within {config.max_rounds} rounds")


def _bits_to_int(bits) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v


def _int_to_bits(v: int, n: int) -> tuple:
    return tuple((v >> (n - 1 - j)) & 1 for j in range(n))


def _gf2_reduce(basis: dict, y: int) -> int:
    for p in sorted(basis, reverse=True):
        if (y >> p) & 1:
            y ^= basis[p]
    return y


def _gf2_insert(basis: dict, y: int) -> bool:
    """Add ``y`` to a reduced-row-echelon basis keyed by pivot bit."""
    y = _gf2_reduce(basis, y)
    if y == 0:
        return False
    p = y.bit_length() - 1
    for q, row in list(basis.items()):
        if (row >> p) & 1:
            basis[q] = row ^ y
    basis[p] = y
    return True


def gf2_rank(rows) -> int:
    basis: dict = {}
    for y in rows:
        _gf2_insert(basis, int(y))
    return len(basis)


def gf2_nullspace(rows, n: int) -> list[int]:
    """Basis of ``{x : y.x = 0 mod 2 for every row y}`` over ``n``-bit ints."""
    basis: dict = {}
    for y in rows:
        y = int(y)
        if y >> n:
            raise ValueError(f"row {y:b} has more than {n} bits")
        _gf2_insert(basis, y)
    out = []
    for free in range(n):
        if free in basis:
            continue
        v = 1 << free
        for p, row in basis.items():
            if (row >> free) & 1:
                v |= 1 << p
        out.append(v)
    return sorted(out)


def solve_simon(n: int, f, rng: np.random.Generator, budget: int | None = None, mode: str = "simulate",
                ft_method: str = "hadamard", trace: RunTrace | None = None):
    """Hidden ``xi`` of a two-to-one ``f`` on ``n``-bit ints, or ``"injective"``.

    Dual samples satisfy ``y.xi = 0``; once they span ``n-1`` dimensions the
    null space is ``{0, xi}``. A failed ``f(0) == f(xi)`` check means ``f``
    may be injective, so sampling continues until rank ``n``.
    """
    budget = budget or 8 * n + 16
    G = AbelianGroup((2,) * n)
    inst = HiddenSubgroupInstance(G, lambda g: f(_bits_to_int(g)))
    basis: dict = {}
    f0 = f(0)
    rejected = None
    for used in range(1, budget + 1):
        s = run_standard_method(inst, rng, mode, ft_method=ft_method)
        y = _bits_to_int(s.label)
        grew = _gf2_insert(basis, y)
        verdict = None
        if len(basis) == n:
            verdict = "injective"
        elif len(basis) == n - 1 and (grew or used == 1):
            (xi,) = gf2_nullspace(basis.values(), n)
            if f(xi) == f0:
                verdict = xi
            else:
                rejected = xi
        if trace is not None:
            trace.oracle_calls += s.oracle_calls
            trace.steps += s.steps
            trace.add_round(sample=used, y=format(y, f"0{n}b"), rank=len(basis),
                            verdict=None if verdict is None else (verdict if isinstance(verdict, str) else format(verdict, f"0{n}b")))
        if verdict is not None:
            if trace is not None:
                trace.choices["samples"] = used
            return verdict
    if rejected is not None:
        raise PromiseViolation(f"candidate xi={rejected:0{n}b} fails f(0) = f(xi) and f never proved injective")
    raise BudgetExhausted(f"rank stayed below {n - 1} after {budget} samples")


def _as_finite(G, instance):
    if isinstance(G, AbelianGroup):
        F = G.as_finite_group()
        hidden = None
        if instance.hidden is not None:
            hidden = Subgroup(F, [G.index(g) for g in instance.hidden.generators],
                              {G.index(g) for g in instance.hidden.elements})
        return F, HiddenSubgroupInstance(F, lambda i: instance.oracle(G.element(i)), hidden)
    return G, instance


def reconstruct_normal_subgroup(G, instance: HiddenSubgroupInstance, rng: np.random.Generator,
                                samples: int | None = None, c: float = 8, mode: str = "exact",
                                verify: bool = True, max_samples: int | None = None,
                                trace: RunTrace | None = None) -> Subgroup:
    """Hidden normal subgroup as the intersection of kernels of sampled irreps.

    Labels come from the representation-label measurement on random coset
    states: drawn from the closed-form distribution (``exact``) or by
    simulating the oracle query, value measurement and Fourier transform
    (``simulate``). ``samples`` defaults to ``ceil(c * log2 |G|)``. With
    ``verify`` the result is checked against the oracle and more samples are
    drawn, up to ``max_samples``, if it is too large.
    """
    orig = G
    F, inst = _as_finite(G, instance)
    table = character_table(F)
    if samples is None:
        samples = max(1, ceil(c * log2(F.order))) if F.order > 1 else 1
    max_samples = max_samples or 4 * samples
    if mode == "exact":
        p = weak_fourier_sampling_distribution(F, inst.subgroup)
        p = p / p.sum()
        draw = lambda: int(rng.choice(len(p), p=p))  # noqa: E731
    elif mode == "simulate":
        codes, values = inst.table
        basis, blocks = fourier_basis(F)
        owner = np.empty(F.order, dtype=np.int64)
        for i, b in enumerate(blocks):
            owner[b] = i

        def draw():
            st = uniform_state(RegisterLayout((max(F.order, 2), max(len(values), 2))), 0, F.order)
            apply_oracle(st, _padded(codes, st.layout.dims[0]))
            measure_register(st, 1, rng)
            apply_nonabelian_ft(st, F, 0, basis=basis)
            idx, _ = measure_register(st, 0, rng)
            return int(owner[idx])
    else:
        raise ValueError(f"mode must be one of {MODES}")

    kernels = [kernel_of_character(table, i).elements for i in range(len(table))]
    members = set(F.elements())
    drawn = []
    e_val = inst.oracle(F.identity)
    while True:
        while len(drawn) < samples:
            i = draw()
            drawn.append(i)
            members &= kernels[i]
        ok = all(inst.oracle(g) == e_val for g in members)
        if not verify or ok:
            break
        if samples >= max_samples:
            raise BudgetExhausted(f"normal subgroup not pinned down by {samples} samples")
        samples = min(max_samples, samples * 2)
    if trace is not None:
        trace.add_round(samples=len(drawn), labels=[table.labels[i] for i in drawn], order=len(members))
        trace.oracle_calls += len(drawn)
    K = _subgroup_from_elements(F, members)
    if isinstance(orig, AbelianGroup):
        return _subgroup_from_elements(orig, [orig.element(i) for i in K.elements])
    return K
