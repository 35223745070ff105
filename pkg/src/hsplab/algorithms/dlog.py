"""Discrete logarithms as a hidden subgroup of ``Z_{p-1} x Z_{p-1}``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import numtheory as nt
from ..errors import BudgetExhausted, InvalidGenerator, NotPrime
from ..fourier import apply_group_ft
from ..groups import AbelianGroup, subgroup_closure
from ..hsp import HiddenSubgroupInstance, run_standard_method
from ..statevector import RegisterLayout, apply_oracle, measure_register, oracle_table, uniform_state
from ..trace import RunTrace


@dataclass
class DlogConfig:
    max_rounds: int = 64
    mode: str = "simulate"
    # "exact": transform modulo p-1; "pow2": transform modulo the least 2^t > p-1
    ft: str = "exact"


def dlog_instance(p: int, g: int, x: int, y: int | None = None) -> HiddenSubgroupInstance:
    """``f(a, b) = g^a x^-b mod p``; hidden subgroup generated by ``(y, 1)`` when ``y`` is known."""
    G = AbelianGroup((p - 1, p - 1))
    x_inv = nt.mod_inverse(x, p)
    f = lambda ab: nt.mod_exp(g, ab[0], p) * nt.mod_exp(x_inv, ab[1], p) % p  # noqa: E731
    hidden = subgroup_closure(G, [(y, 1)]) if y is not None else None
    return HiddenSubgroupInstance(G, f, hidden)


def _solve_pair(l1: int, l2: int, m: int) -> int | None:
    if nt.gcd(l1, m) != 1:
        return None
    return (-nt.mod_inverse(l1, m) * l2) % m if m > 1 else 0


def _pow2_sample(p, g, x, rng, trace):
    m = p - 1
    T = 1
    while T <= m:
        T <<= 1
    x_inv = nt.mod_inverse(x, p)
    codes, values = oracle_table(lambda i: nt.mod_exp(g, i // T, p) * nt.mod_exp(x_inv, i % T, p) % p, T * T)
    st = uniform_state(RegisterLayout((T * T, max(len(values), 2))), 0)
    apply_oracle(st, codes)
    measure_register(st, 1, rng)
    apply_group_ft(st, AbelianGroup((T, T)), 0)
    idx, _ = measure_register(st, 0, rng)
    trace.absorb(st)
    c1, c2 = divmod(idx, T)
    return c1, c2, T


def discrete_log(p: int, g: int, x: int, rng: np.random.Generator, config: DlogConfig | None = None):
    """``y`` with ``g^y = x mod p``, plus the run trace.

    Each round measures a pair ``(l1, l2)`` with ``l2 = -y l1 mod (p-1)``;
    when ``l1`` is a unit, ``y = -l1^-1 l2``. Every answer is confirmed by
    re-exponentiation.
    """
    config = config or DlogConfig()
    if not nt.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= x < p:
        raise ValueError(f"x must lie in Z_{p}^*")
    if not nt.is_primitive_root(g, p):
        raise InvalidGenerator(f"{g} is not a primitive root mod {p}")
    trace = RunTrace("dlog", choices={"p": p, "g": g, "x": x, "mode": config.mode, "ft": config.ft})
    m = p - 1
    if m == 1:
        trace.verdict = {"y": 0, "rounds": 0}
        return 0, trace
    inst = dlog_instance(p, g, x)
    for rnd in range(1, config.max_rounds + 1):
        if config.ft == "exact":
            s = run_standard_method(inst, rng, config.mode)
            trace.oracle_calls += s.oracle_calls
            trace.steps += s.steps
            l1, l2 = s.label
            cands = [(l1, l2)]
            info = {"round": rnd, "l1": l1, "l2": l2}
        elif config.ft == "pow2":
            c1, c2, T = _pow2_sample(p, g, x, rng, trace)
            l1 = round(c1 * m / T) % m
            l2 = round(c2 * m / T) % m
            cands = [(l1, (l2 + d) % m) for d in (0, -1, 1)]
            info = {"round": rnd, "c1": c1, "c2": c2, "T": T, "l1": l1, "l2": l2}
        else:
            raise ValueError(f"unknown ft mode {config.ft!r}")
        y = None
        for a, b in cands:
            cand = _solve_pair(a, b, m)
            if cand is not None and nt.mod_exp(g, cand, p) == x % p:
                y = cand
                break
        info["y"] = y
        trace.add_round(**info)
        if y is not None:
            trace.verdict = {"y": y, "rounds": rnd}
            return y, trace
    raise BudgetExhausted(f"discrete log not found within {config.max_rounds} rounds")
