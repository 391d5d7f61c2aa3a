import random

import pytest

from quadgkm import canonical_reduction as cr
from quadgkm.graph_cohomology import Cochain, is_class, iota, make_Delta, make_M, star_sets
from quadgkm.lattice_oracle import (
    NotInLattice, betti_numbers, cached_class_basis, class_basis, hilbert_rank_expected,
    is_saturated, membership, multiplication_matrix, rank_table, reconstruct,
)
from quadgkm.polyring import Polynomial
from quadgkm.quadric_graph import build

# rank of the degree-2d class lattice, computed once by the oracle and frozen
RANKS = {
    2: [1, 4, 11, 23, 41, 65, 95],
    3: [1, 5, 15, 36, 74, 136, 230, 364, 546],
}


@pytest.mark.parametrize("n,d", [(n, d) for n, ranks in RANKS.items() for d in range(len(ranks))])
def test_rank_matches_formula(n, d):
    L = cached_class_basis(n, d)
    assert L.rank == RANKS[n][d] == hilbert_rank_expected(n, d)
    assert not L.edge_torsion


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_betti_numbers(n):
    b = betti_numbers(n)
    assert len(b) == 2 * n + 1
    assert sum(b) == 2 * n + 2
    assert hilbert_rank_expected(n, 0) == 1
    assert hilbert_rank_expected(n, -1) == 0


@pytest.mark.parametrize("n,d", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_full_system_agrees(n, d):
    g = build(n)
    fast = class_basis(g, d)
    full = class_basis(g, d, eliminate=False)
    assert fast.rank == full.rank
    for b in full.basis:
        membership(b, fast)
    for b in fast.basis:
        membership(b, full)


def test_degree_zero_is_constants():
    g = build(2)
    L = class_basis(g, 0)
    assert L.rank == 1
    assert L.basis[0] in (iota(g, Polynomial.one(3)), iota(g, Polynomial.constant(3, -1)))


@pytest.mark.parametrize("n,d", [(2, 1), (2, 3), (3, 2)])
def test_basis_elements_are_classes_and_round_trip(n, d):
    L = cached_class_basis(n, d)
    assert is_saturated(L)
    for b in L.basis:
        assert is_class(b)[0]
        assert cr.evaluate(cr.reduce(b)) == b


def test_membership_unit_vectors():
    L = cached_class_basis(2, 2)
    for i, b in enumerate(L.basis):
        coords = membership(b, L)
        assert coords == [int(j == i) for j in range(L.rank)]


def test_membership_reconstructs():
    g = build(2)
    L = cached_class_basis(2, 1)
    h = make_M(g, 1) + make_M(g, 2)
    assert reconstruct(membership(h, L), L) == h


def test_non_class_rejected():
    g = build(2)
    L = cached_class_basis(2, 1)
    bad = Cochain.from_mapping(g, {1: g.x(1)})
    with pytest.raises(NotInLattice):
        membership(bad, L)
    with pytest.raises(NotInLattice):
        membership(make_M(g, 1) + bad, L)


def test_degree_mismatch():
    g = build(2)
    with pytest.raises(ValueError):
        membership(make_M(g, 1) * make_M(g, 2), cached_class_basis(2, 1))


@pytest.mark.parametrize("n", [2, 3])
def test_generator_words_are_members(n):
    g = build(n)
    rng = random.Random(n)
    gens = [make_M(g, v) for v in g.vertices] + [make_Delta(g, K) for K in star_sets(g)]
    for _ in range(30):
        word = iota(g, Polynomial.one(g.nvars))
        for _ in range(rng.randint(1, 3)):
            word = word * rng.choice(gens)
        d = word.degree()
        if word.is_zero() or d > 2 * n + 2:
            continue
        L = cached_class_basis(n, d)
        assert reconstruct(membership(word, L), L) == word


def test_multiplication_matrix_is_saturated():
    from quadgkm import intmat
    m = multiplication_matrix((1, -1, 1), 3)
    assert all(f == 1 for f in intmat.invariant_factors(m))
    # a non-primitive form has torsion in its cokernel
    m2 = multiplication_matrix((2, 0, 0), 2)
    assert 2 in intmat.invariant_factors(m2)


def test_rank_table():
    rows = rank_table(2, 4)
    assert [r["rank"] for r in rows] == [1, 4, 11, 23, 41]
    assert all(r["rank"] == r["expected"] and not r["torsion"] for r in rows)


def test_basis_json_export():
    L = cached_class_basis(2, 1)
    g = build(2)
    for b in L.basis:
        assert Cochain.from_json(g, b.to_json()) == b
