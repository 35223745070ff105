"""Graph isomorphism phrased as a hidden subgroup of ``S_n x S_n`` extended by a swap.

For connected graphs ``A`` and ``B`` on ``n`` vertices, let ``C`` be their
disjoint union. Automorphisms of ``C`` either preserve the two vertex
blocks or exchange them wholesale, and they can exchange them only when
``A`` and ``B`` are isomorphic. So ``K = Aut(C)`` sits inside
``G = H u sH`` (``H`` block-preserving, ``s`` the block swap) and either
lies entirely in ``H`` or meets ``sH`` in exactly half its elements.

Everything here is brute force and intended for ``n <= 5``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ..errors import NotConnected, ScaleExceeded
from ..trace import RunTrace

MAX_VERTICES = 5


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..m}`` in one-line notation: ``images[i-1]`` is the image of ``i``."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_zero_based(cls, arr) -> "Permutation":
        return cls(tuple(int(v) + 1 for v in arr))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``(p * q)(i) = p(q(i))``."""
        if self.size != other.size:
            raise ValueError("permutations act on different sets")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def zero_based(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64) - 1

    def __str__(self):
        return " ".join(map(str, self.images))


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph given by a 0/1 adjacency matrix."""

    adjacency: np.ndarray

    def __post_init__(self):
        M = np.array(self.adjacency, dtype=np.uint8)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.isin(M, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        if (M != M.T).any():
            raise ValueError("adjacency matrix must be symmetric")
        if M.diagonal().any():
            raise ValueError("self-loops are not allowed")
        M.setflags(write=False)
        object.__setattr__(self, "adjacency", M)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build from 1-indexed edge pairs."""
        M = np.zeros((n, n), dtype=np.uint8)
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise ValueError(f"bad edge ({i}, {j}) for {n} vertices")
            M[i - 1, j - 1] = M[j - 1, i - 1] = 1
        return cls(M)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def edges(self) -> list:
        i, j = np.nonzero(np.triu(self.adjacency))
        return [(int(a) + 1, int(b) + 1) for a, b in zip(i, j)]

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in np.nonzero(self.adjacency[v])[0]:
                if int(w) not in seen:
                    seen.add(int(w))
                    stack.append(int(w))
        return len(seen) == self.n

    def permuted(self, perm: Permutation) -> "Graph":
        """Relabel vertex ``i`` as ``perm(i)``."""
        p = perm.zero_based()
        M = np.zeros_like(self.adjacency)
        M[np.ix_(p, p)] = self.adjacency
        return Graph(M)

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())


def parse_graph(text: str) -> Graph:
    """First meaningful line is ``n``; each further line is an edge ``i j`` (1-indexed).

    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("graph file is empty")
    try:
        n = int(lines[0])
        edges = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"expected 'i j', got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise ValueError(f"malformed graph file: {exc}") from None
    if n < 1:
        raise ValueError("vertex count must be positive")
    return Graph.from_edges(n, edges)


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def graph_union(A: Graph, B: Graph) -> Graph:
    """Disjoint union: vertices ``1..n`` from ``A`` and ``n+1..2n`` from ``B``."""
    if A.n != B.n:
        raise ValueError(f"graphs must have the same vertex count ({A.n} != {B.n})")
    for name, g in (("A", A), ("B", B)):
        if not g.is_connected():
            raise NotConnected(f"graph {name} is not connected")
    n = A.n
    M = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    M[:n, :n] = A.adjacency
    M[n:, n:] = B.adjacency
    return Graph(M)


def _all_perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def swap_extended_group(n: int) -> np.ndarray:
    """All of ``G = H u sH`` as 0-based one-line rows over ``2n`` points.

    Rows ``[0, |H|)`` are ``H = P_n x P_n`` acting on the two blocks; the
    remaining rows are ``s h`` for ``h`` in ``H``, where ``s`` swaps ``i``
    and ``n + i``.
    """
    if n > MAX_VERTICES:
        raise ScaleExceeded(f"brute-force harness supports n <= {MAX_VERTICES}, got {n}")
    P = _all_perms(n)
    m = len(P)
    H = np.empty((m * m, 2 * n), dtype=np.int64)
    H[:, :n] = np.repeat(P, m, axis=0)
    H[:, n:] = np.tile(P, (m, 1)) + n
    sigma = np.concatenate([np.arange(n, 2 * n), np.arange(n)])
    return np.vstack([H, sigma[H]])


def permute_adjacency(M: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """``f(P) = P M P^T`` for every row ``P`` of ``perms``: entry ``[P(i), P(j)] = M[i, j]``."""
    perms = np.atleast_2d(perms)
    k, m = perms.shape
    out = np.zeros((k, m, m), dtype=M.dtype)
    rows = np.arange(k)[:, None, None]
    out[rows, perms[:, :, None], perms[:, None, :]] = M[None]
    return out


def automorphism_mask(M: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """Which rows of ``perms`` fix ``M`` under simultaneous row/column permutation."""
    images = permute_adjacency(M, perms)
    return (images == M[None]).all(axis=(1, 2))


def are_isomorphic(A: Graph, B: Graph) -> bool:
    """Classical check by trying every vertex bijection."""
    if A.n != B.n or len(A.edges()) != len(B.edges()):
        return False
    P = _all_perms(A.n)
    return bool((permute_adjacency(A.adjacency, P) == B.adjacency[None]).all(axis=(1, 2)).any())


@dataclass(frozen=True)
class StabilizerReport:
    group_order: int
    stabilizer_order: int
    in_swap_coset: int
    fact: str


def stabilizer_report(A: Graph, B: Graph):
    """``(report, K)`` with ``K`` the stabilizer of ``M_C`` inside ``G`` (0-based rows)."""
    C = graph_union(A, B)
    n = A.n
    G = swap_extended_group(n)
    K = G[automorphism_mask(C.adjacency, G)]
    swapped = int((K[:, 0] >= n).sum())
    if swapped == 0:
        fact = "i"
    elif 2 * swapped == len(K):
        fact = "ii"
    else:
        raise AssertionError(f"|K| = {len(K)} with {swapped} in the swap coset violates the dichotomy")
    return StabilizerReport(len(G), len(K), swapped, fact), K


def graph_iso_harness(A: Graph, B: Graph, rng: np.random.Generator, trials: int = 16):
    """Decide isomorphism from random elements of ``K = Aut(C)``.

    A sample lies in the swap coset exactly when it sends vertex 1 beyond
    ``n``. Under fact (ii) each sample does so with probability 1/2, so the
    error probability after ``trials`` samples is ``2^-trials``. The
    samples come from exhaustive enumeration of ``K``; no efficient quantum
    sampler for this group is known.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if A.n > MAX_VERTICES:
        raise ScaleExceeded(f"brute-force harness supports n <= {MAX_VERTICES}, got {A.n}")
    n = A.n
    report, K = stabilizer_report(A, B)
    trace = RunTrace("graphiso", choices={"n": n, "trials": trials})
    trace.notes.append(
        f"|G|={report.group_order} |K|={report.stabilizer_order} |K in sH|={report.in_swap_coset} fact ({report.fact})"
    )
    verdict = "not isomorphic"
    for _ in range(trials):
        pi = Permutation.from_zero_based(K[int(rng.integers(len(K)))])
        image = pi(1)
        trace.add_round(sample=str(pi), image_of_1=image)
        if image > n:
            verdict = "isomorphic"
            break
    trace.verdict = verdict
    return verdict, trace
