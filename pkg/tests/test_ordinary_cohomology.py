import pytest

from quadgkm import ordinary_cohomology as oc
from quadgkm.graph_cohomology import PreconditionError, iota, make_Delta, make_M
from quadgkm.quadric_graph import build


@pytest.mark.parametrize("n", [1, 2, 3])
def test_jspan_degree_one(n):
    J = oc.jspan(n, 1)
    assert J.rank == n + 1
    g = build(n)
    for i in range(1, n + 2):
        assert J.contains(iota(g, g.x(i)))
    assert not J.contains(make_M(g, 1))


@pytest.mark.parametrize("n,d,q", [(2, 1, 1), (2, 2, 2), (3, 3, 2), (3, 4, 1)])
def test_quotient_ranks(n, d, q):
    assert oc.ordinary_degree(n, d).quotient_rank == q


@pytest.mark.parametrize("n,expected", [
    (1, [1, 2, 1]),
    (2, [1, 1, 2, 1, 1]),
    (3, [1, 1, 1, 2, 1, 1, 1]),
])
def test_betti_table(n, expected):
    table = oc.betti_table(n)
    assert [o.quotient_rank for o in table] == expected == oc.expected_betti(n)
    assert not any(o.torsion for o in table)
    assert oc.vanishes_above(n)


@pytest.mark.slow
def test_betti_table_n4():
    table = oc.betti_table(4)
    assert [o.quotient_rank for o in table] == [1, 1, 1, 1, 2, 1, 1, 1, 1]
    assert not any(o.torsion for o in table)


def test_quotient_representatives_span():
    od = oc.ordinary_degree(2, 2)
    assert len(od.quotient_basis) == 2
    g = build(2)
    # c^2 and x are independent modulo J in the middle degree
    assert not oc.congruent_mod_J(make_M(g, 1) ** 2, make_Delta(g, [4, 5, 6]))


def test_rewrite_example():
    assert oc.rewrite_delta_mod_J(2, [3, 5, 6]) == {1, 2, 3}
    H, ok = oc.rewrite_certificate(2, [3, 5, 6])
    assert H == {1, 2, 3} and ok


@pytest.mark.parametrize("n", [2, 3])
def test_rewrite_certificates(n):
    for K in oc.top_sets(n):
        H, ok = oc.rewrite_certificate(n, K)
        assert ok, sorted(K)
        assert oc.bar_parity(n, H) == oc.bar_parity(n, K)


@pytest.mark.parametrize("n", [2, 3])
def test_rewrite_twice(n):
    bar = 2 * n + 3
    for K in oc.top_sets(n):
        twice = oc.rewrite_delta_mod_J(n, oc.rewrite_delta_mod_J(n, K))
        # every element is either kept or replaced by its bar
        assert all(v in K or bar - v in K for v in twice)
        assert len(twice) == n + 1


def test_rewrite_preconditions():
    with pytest.raises(PreconditionError):
        oc.rewrite_delta_mod_J(2, [1, 2])
    with pytest.raises(PreconditionError):
        oc.rewrite_delta_mod_J(2, [1, 6, 2])


def test_delta_classes_split_by_bar_parity():
    groups = oc.delta_classes_mod_J(2)
    assert len(groups) == 2
    for grp in groups:
        assert len({oc.bar_parity(2, K) for K in grp}) == 1
    first = next(grp for grp in groups if (3, 5, 6) in grp)
    assert (1, 2, 3) in first and (2, 4, 6) in first
    # a set with one barred member falls in the other class
    assert (1, 2, 5) not in first and (1, 4, 5) in first


@pytest.mark.parametrize("n", [2, 3])
def test_parity(n):
    rep = oc.parity_check(n)
    assert rep.ok
    assert len(rep.non_vanishing) == 2 ** (n + 1)


def test_parity_verdicts_differ():
    assert oc.parity_check(2).verdict == "x^2 = c^n x"
    assert oc.parity_check(3).verdict == "x^2 = 0"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lai_presentation(n):
    rep = oc.lai_presentation_check(n)
    assert rep.ok, (rep.relations, rep.non_vanishing, rep.basis_certified)


@pytest.mark.parametrize("n", [2, 3])
def test_lai_presentation_alternative_K(n):
    assert oc.lai_presentation_check(n, range(1, n + 2)).ok


def test_q4_square_does_not_vanish():
    g = build(2)
    x = make_Delta(g, [4, 5, 6])
    assert not oc.jspan(2, 4).contains(x * x)
    assert oc.congruent_mod_J(x * x, make_M(g, 1) ** 2 * x)


def test_q6_square_vanishes():
    g = build(3)
    x = make_Delta(g, [5, 6, 7, 8])
    assert oc.jspan(3, 6).contains(x * x)
    assert oc.congruent_mod_J(make_M(g, 1) ** 4, 2 * make_M(g, 1) * x)


@pytest.mark.parametrize("n", [2, 3])
def test_all_M_congruent(n):
    assert all(oc.all_M_congruent(n).values())


def test_grading():
    g = build(3)
    assert make_Delta(g, [5, 6, 7, 8]).degree() == 3  # polynomial degree n, cohomological 2n
