from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsplab.errors import UnsupportedGroup
from hsplab.groups import (
    AbelianGroup,
    all_subgroups,
    annihilator,
    character_table,
    conjugacy_classes,
    conjugate_subgroup,
    cosets,
    dihedral_group,
    explicit_irreps,
    group_from_name,
    is_normal,
    kernel_of_character,
    normal_subgroups,
    reconstruct_from_dual_samples,
    subgroup_closure,
    symmetric_group,
    trivial_subgroup,
    whole_group,
)

SMALL_ABELIAN = [(12,), (2, 2), (2, 4), (3, 3), (2, 2, 2), (4, 4), (2, 3, 4), (8,), (2, 6), (64,), (2, 4, 8)]
NONABELIAN = ["D3", "D4", "D5", "D6", "S3", "S4"]


def elems(K):
    return set(K.elements)


def test_closure_examples():
    Z12 = AbelianGroup((12,))
    assert elems(subgroup_closure(Z12, [3])) == {(0,), (3,), (6,), (9,)}
    assert elems(subgroup_closure(Z12, [])) == {(0,)}
    V = AbelianGroup((2, 2))
    assert elems(subgroup_closure(V, [(1, 1)])) == {(0, 0), (1, 1)}
    D4 = dihedral_group(4)
    assert elems(subgroup_closure(D4, [])) == {D4.identity}


def test_annihilator_examples():
    for N in (12, 20, 60):
        G = AbelianGroup((N,))
        for r in (d for d in range(1, N + 1) if N % d == 0):
            K = subgroup_closure(G, [r % N])
            assert {l[0] for l in annihilator(G, K).elements} == set(range(0, N, N // r))
    G = AbelianGroup((2, 4))
    assert annihilator(G, trivial_subgroup(G)).order == G.order
    assert elems(annihilator(G, whole_group(G))) == {(0, 0)}


def test_reconstruct_from_dual_samples_examples():
    Z12 = AbelianGroup((12,))
    assert elems(reconstruct_from_dual_samples(Z12, [4, 8])) == {(0,), (3,), (6,), (9,)}
    assert reconstruct_from_dual_samples(Z12, []).order == 12
    V = AbelianGroup((2, 2))
    assert elems(reconstruct_from_dual_samples(V, [(0, 0), (1, 1)])) == {(0, 0), (1, 1)}


@pytest.mark.parametrize("orders", SMALL_ABELIAN + [pytest.param((2,) * 6, marks=pytest.mark.slow)])
def test_double_dual_and_lagrange(orders):
    G = AbelianGroup(orders)
    for K in all_subgroups(G):
        assert G.order % K.order == 0
        assert annihilator(G, annihilator(G, K)) == K
        assert annihilator(G, K).order * K.order == G.order
        cs = cosets(G, K)
        assert len(cs) * K.order == G.order
        assert set().union(*(c.elements for c in cs)) == set(G.elements())
        assert all(len(c.elements) == K.order for c in cs)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_ABELIAN[:9]), st.data())
def test_character_multiplicativity(orders, data):
    G = AbelianGroup(orders)
    pick = lambda: tuple(data.draw(st.integers(0, n - 1)) for n in orders)  # noqa: E731
    l, g, h = pick(), pick(), pick()
    chi = G.character(l)
    assert abs(chi(G.mul(g, h)) - chi(g) * chi(h)) < 1e-12


def test_cyclic_and_boolean_characters():
    N = 7
    G = AbelianGroup((N,))
    for k, j in product(range(N), repeat=2):
        assert abs(G.character(k)(j) - np.exp(2j * np.pi * j * k / N)) < 1e-12
    n = 3
    B = AbelianGroup((2,) * n)
    for x, y in product(B.elements(), repeat=2):
        assert abs(B.character(x)(y) - (-1) ** sum(a * b for a, b in zip(x, y))) < 1e-12


def test_dihedral_relations_and_conjugation():
    D4 = dihedral_group(4)
    r, s = D4.coerce("r"), D4.coerce("s")
    assert D4.mul(s, D4.mul(r, s)) == D4.inv(r)
    K = subgroup_closure(D4, ["s"])
    conj = conjugate_subgroup(D4, K, "r")
    assert {D4.name_of(g) for g in conj.elements} == {"e", "r2s"}
    assert conjugate_subgroup(D4, K, "e") == K
    assert is_normal(D4, subgroup_closure(D4, ["r2"]))
    assert not is_normal(D4, K)


def test_abelian_conjugation_trivial():
    G = AbelianGroup((2, 4)).as_finite_group()
    for K in all_subgroups(G):
        assert is_normal(G, K)
        assert all(conjugate_subgroup(G, K, g) == K for g in G.elements())


def test_symmetric_group_composition():
    S3 = symmetric_group(3)
    # one-line names, composition (p*q)(i) = p(q(i))
    a, b = S3.coerce("213"), S3.coerce("132")
    assert S3.name_of(S3.mul(a, b)) == "231"
    assert len(all_subgroups(S3)) == 6
    assert len(all_subgroups(symmetric_group(4))) == 30
    assert [K.order for K in normal_subgroups(symmetric_group(4))] == [1, 4, 12, 24]


@pytest.mark.parametrize("name", NONABELIAN + ["Z12", "Z2xZ4"])
def test_character_tables_valid(name):
    G = group_from_name(name)
    table = character_table(G)
    table.validate()
    assert sum(d * d for d in table.dims) == G.order
    assert len(table.dims) == len(conjugacy_classes(G))
    for i in range(len(table)):
        assert is_normal(G, kernel_of_character(table, i))


def test_table_examples():
    assert character_table(symmetric_group(3)).dims == (1, 1, 2)
    t = character_table(group_from_name("Z6"))
    assert t.dims == (1,) * 6
    D4 = dihedral_group(4)
    t = character_table(D4)
    assert kernel_of_character(t, t.trivial_index()).order == 8
    rot = kernel_of_character(t, t.index("det"))
    assert {D4.name_of(g) for g in rot.elements} == {"e", "r", "r2", "r3"}
    Z12 = group_from_name("Z12")
    t = character_table(Z12)
    for k in range(12):
        K = kernel_of_character(t, k)
        step = 12 // np.gcd(k, 12)
        assert {int(Z12.name_of(g)) for g in K.elements} == set(range(0, 12, step))


@pytest.mark.parametrize("name", NONABELIAN)
def test_explicit_irreps_are_homomorphisms_matching_table(name):
    G = group_from_name(name)
    table = character_table(G)
    reps = explicit_irreps(G)
    for i, R in enumerate(reps):
        assert R.shape[1] == table.dims[i]
        for g in G.elements():
            assert np.abs(R[g].conj().T @ R[g] - np.eye(R.shape[1])).max() < 1e-12
            assert abs(np.trace(R[g]) - table.values[i, g]) < 1e-12
            for h in G.elements():
                assert np.abs(R[G.mul(g, h)] - R[g] @ R[h]).max() < 1e-12


def test_unknown_group():
    with pytest.raises(UnsupportedGroup):
        group_from_name("Q8")
    with pytest.raises(UnsupportedGroup):
        character_table(dihedral_group(8))
