"""Simon's problem driver and oracle builders."""

from __future__ import annotations

import numpy as np

from ..hsp import solve_simon
from ..trace import RunTrace


def random_simon_oracle(n: int, xi: int, rng: np.random.Generator):
    """Random ``f`` on ``n``-bit ints with ``f(x) = f(x ^ xi)`` and no other collisions.

    ``xi = 0`` gives a random injective function.
    """
    labels = rng.permutation(1 << n)
    table = [int(labels[min(x, x ^ xi)]) for x in range(1 << n)]
    return lambda x: table[x]


def simon_driver(n: int, oracle, rng: np.random.Generator, budget: int | None = None, mode: str = "simulate"):
    """Hidden string of a Simon oracle (or ``"injective"``) using the Hadamard transform."""
    trace = RunTrace("simon", choices={"n": n, "mode": mode})
    xi = solve_simon(n, oracle, rng, budget=budget, mode=mode, ft_method="hadamard", trace=trace)
    trace.verdict = xi if isinstance(xi, str) else format(xi, f"0{n}b")
    return xi, trace
