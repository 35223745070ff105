"""Shor factoring: reduction to order finding plus classical pre-checks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import numtheory as nt
from ..errors import BudgetExhausted, NoFactor
from ..hsp import ShorConfig, solve_order_shor
from ..trace import RunTrace


@dataclass
class FactorConfig:
    max_attempts: int = 24
    force_a: int | None = None
    shor: ShorConfig = field(default_factory=ShorConfig)


def factor_attempt(N: int, a: int, rng: np.random.Generator, shor: ShorConfig | None = None,
                   trace: RunTrace | None = None) -> int | None:
    """One pass of the reduction with base ``a``; a nontrivial factor or ``None``.

    A factor falls out directly when ``gcd(a, N) > 1``. Otherwise the order
    ``r`` must be even with ``a^(r/2) != -1 mod N``, and then
    ``gcd(a^(r/2) -+ 1, N)`` splits ``N``.
    """
    info = {"a": a}
    g = nt.gcd(a, N)
    if g > 1:
        info.update(gcd=g, outcome="shared factor")
        if trace is not None:
            trace.add_round(**info)
        return g
    sub = RunTrace("order") if trace is not None else None
    r = solve_order_shor(N, a, rng, shor, trace=sub)
    info["r"] = r
    if sub is not None:
        info["order_rounds"] = sub.rounds
        trace.oracle_calls += sub.oracle_calls
        trace.steps += sub.steps
    result = None
    if r % 2:
        info["outcome"] = "odd order"
    else:
        half = nt.mod_exp(a, r // 2, N)
        info["a_half"] = half
        if half == N - 1:
            info["outcome"] = "a^(r/2) = -1 mod N"
        else:
            alpha, beta = (half - 1) % N, (half + 1) % N
            cands = [nt.gcd(alpha, N), nt.gcd(beta, N)]
            info.update(gcds=cands)
            good = [k for k in cands if 1 < k < N]
            if good:
                result = good[0]
                info["outcome"] = "split"
            else:
                info["outcome"] = "trivial gcds"
    if trace is not None:
        trace.add_round(**info)
    return result


def factor(N: int, rng: np.random.Generator, config: FactorConfig | None = None):
    """Nontrivial factor ``k`` of ``N`` with its :class:`RunTrace`.

    Even numbers and perfect powers are split classically; primes raise
    :class:`NoFactor`. Each quantum attempt succeeds with probability at
    least 1/2 for odd ``N`` that is not a prime power.
    """
    config = config or FactorConfig()
    trace = RunTrace("factor", choices={"N": N})
    if N < 4:
        raise NoFactor(f"{N} has no nontrivial factor")
    k = None
    if N % 2 == 0:
        k, how = 2, "even"
    elif nt.is_prime(N):
        raise NoFactor(f"{N} is prime")
    elif (pp := nt.perfect_power(N)) is not None:
        k, how = pp[0], f"perfect power {pp[0]}^{pp[1]}"
    if k is not None:
        trace.notes.append(how)
    else:
        for attempt in range(config.max_attempts):
            if attempt == 0 and config.force_a is not None:
                a = config.force_a % N
            else:
                a = int(rng.integers(2, N))
            trace.choices.setdefault("a", []).append(a)
            k = factor_attempt(N, a, rng, config.shor, trace)
            if k is not None:
                break
        else:
            raise BudgetExhausted(f"no factor of {N} after {config.max_attempts} attempts")
    assert 1 < k < N and N % k == 0
    trace.verdict = {"factor": k, "factors": sorted([k, N // k])}
    return k, trace
