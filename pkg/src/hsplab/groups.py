"""Finite groups, subgroups, characters and character tables.

Two group models are provided:

* :class:`AbelianGroup` -- a product of cyclic factors ``Z_n1 x ... x Z_nk``
  whose elements are residue tuples under componentwise addition.
* :class:`FiniteGroup` -- an explicit group given by its multiplication table
  over element indices ``0..|G|-1``. Built-in families (cyclic, abelian
  products, dihedral ``D_n``, ``S_3``, ``S_4``) carry character tables and
  explicit unitary irreducible representations.

Both expose the same small protocol (``elements``, ``mul``, ``inv``,
``identity``, ``index``, ``element``, ``order``), so subgroup, coset and
conjugation routines are written once.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import cos, pi, prod, sin

import numpy as np

from .errors import UnsupportedGroup
from .numtheory import lcm

__all__ = [
    "AbelianGroup",
    "FiniteGroup",
    "Subgroup",
    "Coset",
    "Character",
    "CharacterTable",
    "cyclic_group",
    "abelian_product_group",
    "dihedral_group",
    "symmetric_group",
    "group_from_name",
    "subgroup_closure",
    "trivial_subgroup",
    "whole_group",
    "all_subgroups",
    "normal_subgroups",
    "left_coset",
    "cosets",
    "annihilator",
    "reconstruct_from_dual_samples",
    "conjugate_subgroup",
    "is_normal",
    "conjugacy_classes",
    "character_table",
    "kernel_of_character",
    "explicit_irreps",
]


class AbelianGroup:
    """``Z_{n_1} x ... x Z_{n_k}`` with elements as residue tuples.

    Element indices are mixed-radix with the first factor most significant,
    which is also how a register of dimension ``|G|`` is split into factors.
    """

    is_abelian = True

    def __init__(self, orders):
        orders = tuple(int(n) for n in orders)
        if not orders or any(n < 1 for n in orders):
            raise ValueError("need at least one cyclic factor, each of order >= 1")
        self.orders = orders
        self.order = prod(orders)
        self.identity = (0,) * len(orders)
        self._lcm = 1
        for n in orders:
            self._lcm = lcm(self._lcm, n)

    def __repr__(self):
        return "AbelianGroup(" + " x ".join(f"Z_{n}" for n in self.orders) + ")"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and other.orders == self.orders

    def __hash__(self):
        return hash(("AbelianGroup", self.orders))

    @property
    def rank(self) -> int:
        return len(self.orders)

    def coerce(self, g):
        if isinstance(g, (int, np.integer)):
            if self.rank != 1:
                raise ValueError(f"integer element needs a rank-1 group, got {self!r}")
            g = (int(g),)
        g = tuple(int(x) for x in g)
        if len(g) != self.rank:
            raise ValueError(f"element {g} has wrong length for {self!r}")
        return tuple(x % n for x, n in zip(g, self.orders))

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    def index(self, g) -> int:
        g = self.coerce(g)
        i = 0
        for x, n in zip(g, self.orders):
            i = i * n + x
        return i

    def element(self, i: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.orders):
            i, x = divmod(i, n)
            out.append(x)
        return tuple(reversed(out))

    def mul(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    add = mul

    def inv(self, a):
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def pairing(self, l, g) -> Fraction:
        """Phase of ``chi_l(g)`` in turns, as an exact fraction in [0, 1)."""
        return Fraction(sum(li * gi * (self._lcm // n) for li, gi, n in zip(l, g, self.orders)) % self._lcm, self._lcm)

    def character(self, l) -> "Character":
        return Character(self, self.coerce(l))

    def as_finite_group(self) -> "FiniteGroup":
        return abelian_product_group(self.orders)


@dataclass(frozen=True)
class Character:
    """``chi_l(g) = exp(2 pi i sum_j l_j g_j / n_j)`` on an :class:`AbelianGroup`."""

    group: AbelianGroup
    label: tuple

    def __call__(self, g) -> complex:
        t = self.group.pairing(self.label, self.group.coerce(g))
        return complex(np.exp(2j * pi * float(t)))

    def is_trivial_on(self, g) -> bool:
        return self.group.pairing(self.label, self.group.coerce(g)) == 0


class FiniteGroup:
    """Explicit finite group on element indices with a multiplication table.

    ``table[a, b]`` is the index of ``a * b``. ``family`` records which
    built-in construction produced the group so that a character table can
    be looked up; ad-hoc groups have ``family = None``.
    """

    is_abelian = False

    def __init__(self, table, names=None, *, name="G", family=None, perms=None, check=True):
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        self.table = table
        self.table.setflags(write=False)
        self.order = n
        self.name = name
        self.family = family
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        self.perms = perms
        ident = [e for e in range(n) if np.array_equal(table[e], np.arange(n)) and np.array_equal(table[:, e], np.arange(n))]
        if len(ident) != 1:
            raise ValueError("multiplication table has no unique identity")
        self.identity = ident[0]
        inverses = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(table[a] == self.identity)[0]
            if len(hits) != 1 or table[hits[0], a] != self.identity:
                raise ValueError(f"element {a} has no two-sided inverse")
            inverses[a] = hits[0]
        self.inverses = inverses
        if check and n <= 200:
            self._check_associative()
        self.is_abelian = bool(np.array_equal(table, table.T))
        self._name_index = {nm: i for i, nm in enumerate(self.names)}

    def _check_associative(self):
        t = self.table
        left = t[t[:, :, None], np.arange(self.order)[None, None, :]]  # (ab)c
        right = t[np.arange(self.order)[:, None, None], t[None, :, :]]  # a(bc)
        if not np.array_equal(left, right):
            raise ValueError("multiplication table is not associative")

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def coerce(self, g) -> int:
        if isinstance(g, str):
            try:
                return self._name_index[g]
            except KeyError:
                raise ValueError(f"{g!r} is not an element name of {self.name}") from None
        g = int(g)
        if not 0 <= g < self.order:
            raise ValueError(f"element index {g} out of range for {self.name}")
        return g

    def elements(self) -> list[int]:
        return list(range(self.order))

    def index(self, g) -> int:
        return self.coerce(g)

    def element(self, i: int) -> int:
        return i

    def mul(self, a, b) -> int:
        return int(self.table[a, b])

    def inv(self, a) -> int:
        return int(self.inverses[a])

    def name_of(self, g) -> str:
        return self.names[g]

    @classmethod
    def from_permutations(cls, perms, *, name="G", family=None, names=None):
        """Group of the given 0-indexed permutations (must already be closed).

        Composition is ``(p * q)(i) = p(q(i))``.
        """
        perms = [tuple(p) for p in perms]
        where = {p: i for i, p in enumerate(perms)}
        if len(where) != len(perms):
            raise ValueError("duplicate permutations")
        n = len(perms)
        table = np.empty((n, n), dtype=np.int64)
        for i, p in enumerate(perms):
            for j, q in enumerate(perms):
                pq = tuple(p[x] for x in q)
                if pq not in where:
                    raise ValueError("permutation set is not closed under composition")
                table[i, j] = where[pq]
        if names is None:
            names = ["".join(str(x + 1) for x in p) if len(p) < 10 else str(tuple(x + 1 for x in p)) for p in perms]
        return cls(table, names, name=name, family=family, perms=perms)


def cyclic_group(n: int) -> FiniteGroup:
    return abelian_product_group((n,))


def abelian_product_group(orders) -> FiniteGroup:
    """``Z_{n1} x ... x Z_{nk}`` as an explicit :class:`FiniteGroup`.

    Indices follow :meth:`AbelianGroup.index`, so the two models line up
    element for element.
    """
    A = AbelianGroup(orders)
    els = A.elements()
    table = np.empty((A.order, A.order), dtype=np.int64)
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            table[i, j] = A.index(A.mul(a, b))
    if A.rank == 1:
        names = [str(g[0]) for g in els]
        name = f"Z{A.orders[0]}"
    else:
        names = [".".join(str(x) for x in g) for g in els]
        name = "x".join(f"Z{n}" for n in A.orders)
    return FiniteGroup(table, names, name=name, family=("abelian", A.orders))


def dihedral_group(n: int) -> FiniteGroup:
    """``D_n`` of order ``2n``; index ``k + n*m`` is ``r^k s^m``.

    Multiplication uses ``s r s = r^-1``, i.e.
    ``(r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b+d)``.
    """
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    size = 2 * n
    table = np.empty((size, size), dtype=np.int64)
    for i in range(size):
        a, b = i % n, i // n
        for j in range(size):
            c, d = j % n, j // n
            k = (a + (c if b == 0 else -c)) % n
            table[i, j] = k + n * ((b + d) % 2)

    def nm(k, m):
        r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        s = "s" if m else ""
        return (r + s) or "e"

    names = [nm(i % n, i // n) for i in range(size)]
    return FiniteGroup(table, names, name=f"D{n}", family=("dihedral", n))


def symmetric_group(n: int) -> FiniteGroup:
    """``S_n`` on one-line permutations of ``0..n-1`` in lexicographic order."""
    if n < 1 or n > 6:
        raise UnsupportedGroup("symmetric groups are built for 1 <= n <= 6")
    perms = list(itertools.permutations(range(n)))
    return FiniteGroup.from_permutations(perms, name=f"S{n}", family=("symmetric", n))


def group_from_name(spec: str) -> FiniteGroup:
    """Parse names like ``D4``, ``S3``, ``Z12`` or ``Z2xZ4``."""
    s = spec.strip().replace(" ", "")
    try:
        if s[0] in "Dd" and s[1:].isdigit():
            return dihedral_group(int(s[1:]))
        if s[0] in "Ss" and s[1:].isdigit():
            return symmetric_group(int(s[1:]))
        if s[0] in "Zz":
            parts = s.lower().split("x")
            return abelian_product_group([int(p.lstrip("z")) for p in parts])
    except (ValueError, IndexError):
        pass
    raise UnsupportedGroup(f"unknown group {spec!r}; expected Dn, Sn, Zn or ZaxZb...")


class Subgroup:
    """A subgroup given by its parent, a generating list and its element set."""

    def __init__(self, parent, generators, elements):
        self.parent = parent
        self.generators = tuple(generators)
        self.elements = frozenset(elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.elements == other.elements and (self.parent is other.parent or self.parent == other.parent)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        shown = sorted(self.elements)[:8]
        more = "" if self.order <= 8 else ", ..."
        return f"Subgroup(order={self.order}, elements={shown}{more})"

    def sorted_elements(self):
        return sorted(self.elements, key=self.parent.index)


@dataclass(frozen=True)
class Coset:
    representative: object
    subgroup: Subgroup
    elements: frozenset

    def __contains__(self, g):
        return g in self.elements


def _closure(G, seeds) -> set:
    """Breadth-first closure of ``seeds`` under multiplication by the seeds."""
    seeds = [G.coerce(g) for g in seeds]
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        h = queue.popleft()
        for g in seeds:
            x = G.mul(h, g)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return seen


def subgroup_closure(parent, generators) -> Subgroup:
    """Smallest subgroup of ``parent`` containing ``generators``."""
    gens = [parent.coerce(g) for g in generators]
    return Subgroup(parent, gens, _closure(parent, gens))


def _subgroup_from_elements(parent, elements) -> Subgroup:
    """Wrap a known-closed element set, choosing a short generating list greedily."""
    elements = set(elements)
    gens: list = []
    span = {parent.identity}
    for g in sorted(elements, key=parent.index):
        if g not in span:
            gens.append(g)
            span = _closure(parent, gens)
            if len(span) == len(elements):
                break
    if span != elements:
        raise ValueError("element set is not a subgroup")
    return Subgroup(parent, gens, elements)


def trivial_subgroup(G) -> Subgroup:
    return Subgroup(G, [], {G.identity})


def whole_group(G) -> Subgroup:
    return _subgroup_from_elements(G, G.elements())


def all_subgroups(G) -> list[Subgroup]:
    """Every subgroup of ``G``, grown one generator at a time from the trivial one."""
    found = {frozenset([G.identity]): trivial_subgroup(G)}
    frontier = list(found.values())
    els = G.elements()
    while frontier:
        nxt = []
        for H in frontier:
            for g in els:
                if g in H.elements:
                    continue
                K = subgroup_closure(G, list(H.generators) + [g])
                if K.elements not in found:
                    found[K.elements] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(found.values(), key=lambda K: (K.order, sorted(G.index(g) for g in K.elements)))


def normal_subgroups(G) -> list[Subgroup]:
    return [K for K in all_subgroups(G) if is_normal(G, K)]


def left_coset(G, K: Subgroup, g) -> Coset:
    g = G.coerce(g)
    return Coset(g, K, frozenset(G.mul(g, k) for k in K.elements))


def cosets(G, K: Subgroup) -> list[Coset]:
    """Left cosets ``gK`` partitioning ``G``; representatives are least by index."""
    out = []
    covered: set = set()
    for g in G.elements():
        if g not in covered:
            c = left_coset(G, K, g)
            covered |= c.elements
            out.append(c)
    return out


def annihilator(G: AbelianGroup, K: Subgroup) -> Subgroup:
    """Labels ``l`` whose character is identically 1 on ``K``."""
    gens = list(K.generators) or [G.identity]
    labels = [l for l in G.elements() if all(G.pairing(l, k) == 0 for k in gens)]
    return _subgroup_from_elements(G, labels)


def reconstruct_from_dual_samples(G: AbelianGroup, samples) -> Subgroup:
    """``{g : chi_l(g) = 1 for every sampled l}``."""
    samples = [G.coerce(l) for l in samples]
    members = [g for g in G.elements() if all(G.pairing(l, g) == 0 for l in samples)]
    return _subgroup_from_elements(G, members)


def conjugate_subgroup(G, K: Subgroup, g) -> Subgroup:
    """``g K g^-1``."""
    g = G.coerce(g)
    gi = G.inv(g)
    conj = lambda k: G.mul(G.mul(g, k), gi)  # noqa: E731
    return Subgroup(G, [conj(k) for k in K.generators], {conj(k) for k in K.elements})


def is_normal(G, K: Subgroup) -> bool:
    if G.is_abelian:
        return True
    for g in G.elements():
        gi = G.inv(g)
        # checking generators suffices: conjugation is an automorphism
        for k in K.generators:
            if G.mul(G.mul(g, k), gi) not in K.elements:
                return False
    return True


def conjugacy_classes(G) -> list[frozenset]:
    out = []
    seen: set = set()
    for x in G.elements():
        if x in seen:
            continue
        cls = frozenset(G.mul(G.mul(g, x), G.inv(g)) for g in G.elements())
        seen |= cls
        out.append(cls)
    return out


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters of a :class:`FiniteGroup`.

    ``values[i, g]`` is ``chi_i`` evaluated on element index ``g``. The rows
    are class functions; ``classes`` lists the conjugacy classes.
    """

    group: FiniteGroup
    labels: tuple
    dims: tuple
    values: np.ndarray
    classes: tuple

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def trivial_index(self) -> int:
        for i in range(len(self.labels)):
            if np.allclose(self.values[i], 1.0):
                return i
        raise AssertionError("table has no trivial character")

    def validate(self, tol: float = 1e-12) -> None:
        G = self.group
        if sum(d * d for d in self.dims) != G.order:
            raise AssertionError(f"sum of squared dimensions {self.dims} != |G| = {G.order}")
        gram = self.values @ self.values.conj().T
        if not np.allclose(gram, G.order * np.eye(len(self.dims)), atol=tol * G.order, rtol=0):
            raise AssertionError("character rows are not orthogonal")
        for i, d in enumerate(self.dims):
            if abs(self.values[i, G.identity] - d) > tol:
                raise AssertionError(f"chi_{i}(e) != d_{i}")
        for cls in self.classes:
            idx = sorted(cls)
            if not np.allclose(self.values[:, idx], self.values[:, idx[:1]], atol=tol, rtol=0):
                raise AssertionError("character is not constant on a conjugacy class")


def _cycle_type(p) -> tuple:
    seen = [False] * len(p)
    lens = []
    for i in range(len(p)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            lens.append(n)
    return tuple(sorted(lens, reverse=True))


# class functions on cycle types, entered by hand
_SYMMETRIC_TABLES = {
    3: (
        ("trivial", "sign", "standard"),
        {
            (1, 1, 1): (1, 1, 2),
            (2, 1): (1, -1, 0),
            (3,): (1, 1, -1),
        },
    ),
    4: (
        ("trivial", "sign", "two", "standard", "standard_sign"),
        {
            (1, 1, 1, 1): (1, 1, 2, 3, 3),
            (2, 1, 1): (1, -1, 0, 1, -1),
            (2, 2): (1, 1, 2, -1, -1),
            (3, 1): (1, 1, -1, 0, 0),
            (4,): (1, -1, 0, -1, 1),
        },
    ),
}


def _dihedral_characters(n: int):
    labels = ["trivial", "det"]
    rows = [lambda k, m: 1.0, lambda k, m: (-1.0) ** m]
    if n % 2 == 0:
        labels += ["alt_r", "alt_rs"]
        rows += [lambda k, m: (-1.0) ** k, lambda k, m: (-1.0) ** (k + m)]
    for h in range(1, (n - 1) // 2 + 1):
        labels.append(f"rho{h}")
        rows.append(lambda k, m, h=h: 2 * cos(2 * pi * h * k / n) if m == 0 else 0.0)
    vals = np.array([[f(i % n, i // n) for i in range(2 * n)] for f in rows], dtype=complex)
    return labels, vals


def character_table(G) -> CharacterTable:
    """Character table of a built-in group family, validated on construction."""
    if isinstance(G, AbelianGroup):
        G = G.as_finite_group()
    fam = getattr(G, "family", None)
    if fam is None:
        raise UnsupportedGroup(f"no character table for {G!r}")
    kind = fam[0]
    if kind == "abelian":
        A = AbelianGroup(fam[1])
        els = A.elements()
        labels = [G.names[i] for i in range(G.order)]
        vals = np.array([[np.exp(2j * pi * float(A.pairing(l, g))) for g in els] for l in els])
    elif kind == "dihedral":
        if fam[1] > 6:
            raise UnsupportedGroup("dihedral tables are built for n <= 6")
        labels, vals = _dihedral_characters(fam[1])
    elif kind == "symmetric" and fam[1] in _SYMMETRIC_TABLES:
        labels, by_type = _SYMMETRIC_TABLES[fam[1]]
        vals = np.array([by_type[_cycle_type(p)] for p in G.perms], dtype=complex).T
    else:
        raise UnsupportedGroup(f"no character table for {G!r}")
    vals = np.asarray(vals, dtype=complex)
    dims = tuple(int(round(v.real)) for v in vals[:, G.identity])
    table = CharacterTable(G, tuple(labels), dims, vals, tuple(conjugacy_classes(G)))
    table.validate()
    return table


def kernel_of_character(table: CharacterTable, i: int) -> Subgroup:
    """``{g : chi_i(g) = d_i}``, a normal subgroup."""
    G = table.group
    d = table.dims[i]
    members = [g for g in G.elements() if abs(table.values[i, g] - d) < 1e-9]
    return _subgroup_from_elements(G, members)


def _perm_matrix(p) -> np.ndarray:
    n = len(p)
    M = np.zeros((n, n))
    M[list(p), list(range(n))] = 1.0
    return M


def _standard_basis(n: int) -> np.ndarray:
    """Orthonormal basis (columns) of the sum-zero subspace of R^n."""
    B = np.zeros((n, n - 1))
    for j in range(1, n):
        B[:j, j - 1] = 1.0
        B[j, j - 1] = -j
        B[:, j - 1] /= np.sqrt(j * (j + 1))
    return B


def _sign(p) -> int:
    return 1 if (len(p) - len(_cycle_type(p))) % 2 == 0 else -1


def explicit_irreps(G) -> list[np.ndarray]:
    """Unitary irreducible representations, ordered like :func:`character_table`.

    Entry ``i`` has shape ``(|G|, d_i, d_i)``. These are constructed directly
    (rotation matrices, permutation matrices restricted to invariant
    subspaces), independently of the hand-entered character values.
    """
    if isinstance(G, AbelianGroup):
        G = G.as_finite_group()
    fam = getattr(G, "family", None)
    if fam is None:
        raise UnsupportedGroup(f"no explicit irreps for {G!r}")
    kind = fam[0]
    if kind == "abelian":
        A = AbelianGroup(fam[1])
        els = A.elements()
        return [np.array([[[np.exp(2j * pi * float(A.pairing(l, g)))]] for g in els]) for l in els]
    if kind == "dihedral":
        n = fam[1]
        one = lambda f: np.array([[[f(i % n, i // n)]] for i in range(2 * n)], dtype=complex)  # noqa: E731
        reps = [one(lambda k, m: 1.0), one(lambda k, m: (-1.0) ** m)]
        if n % 2 == 0:
            reps += [one(lambda k, m: (-1.0) ** k), one(lambda k, m: (-1.0) ** (k + m))]
        refl = np.diag([1.0, -1.0])
        for h in range(1, (n - 1) // 2 + 1):
            mats = []
            for i in range(2 * n):
                k, m = i % n, i // n
                t = 2 * pi * h * k / n
                R = np.array([[cos(t), -sin(t)], [sin(t), cos(t)]])
                mats.append(R @ refl if m else R)
            reps.append(np.array(mats, dtype=complex))
        return reps
    if kind == "symmetric" and fam[1] in (3, 4):
        n = fam[1]
        B = _standard_basis(n)
        trivial = np.ones((G.order, 1, 1), dtype=complex)
        sign = np.array([[[_sign(p)]] for p in G.perms], dtype=complex)
        std = np.array([B.T @ _perm_matrix(p) @ B for p in G.perms], dtype=complex)
        if n == 3:
            return [trivial, sign, std]
        # S4 acts on its three perfect matchings, giving S4 -> S3
        matchings = [frozenset({frozenset({0, 1}), frozenset({2, 3})}),
                     frozenset({frozenset({0, 2}), frozenset({1, 3})}),
                     frozenset({frozenset({0, 3}), frozenset({1, 2})})]
        B3 = _standard_basis(3)
        two = []
        for p in G.perms:
            image = [matchings.index(frozenset(frozenset(p[x] for x in pair) for pair in m)) for m in matchings]
            two.append(B3.T @ _perm_matrix(image) @ B3)
        two = np.array(two, dtype=complex)
        return [trivial, sign, two, std, sign * std]
    raise UnsupportedGroup(f"no explicit irreps for {G!r}")
