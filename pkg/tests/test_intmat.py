import pytest
from hypothesis import given, settings, strategies as st

from quadgkm import intmat
from quadgkm.quadric_graph import _det


def matrices(max_rows=4, max_cols=4, bound=9):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@pytest.mark.parametrize("m,diag", [
    ([[1, 0], [0, 1]], [1, 1]),
    ([[2, 4], [6, 8]], [2, 4]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[0, 0, 0]], [0]),
    ([[2, 0], [0, 3]], [1, 6]),
])
def test_smith_examples(m, diag):
    u, s, v = intmat.smith_normal_form(m)
    assert intmat.diagonal(s) == diag
    assert intmat.matmul(intmat.matmul(u, m), v) == s


@given(matrices())
def test_smith_properties(m):
    u, s, v = intmat.smith_normal_form(m)
    assert intmat.matmul(intmat.matmul(u, m), v) == s
    assert intmat.is_smith_form(s)
    assert abs(_det(u)) == 1 and abs(_det(v)) == 1
    assert [x for x in intmat.diagonal(s) if x] == intmat.invariant_factors(m)


@given(matrices(max_rows=3, max_cols=5, bound=4))
def test_kernel_basis(m):
    cols = len(m[0])
    ker = intmat.kernel_basis(m, cols)
    assert len(ker) == cols - intmat.rank(m)
    for u in ker:
        assert all(sum(a * b for a, b in zip(row, u)) == 0 for row in m)
    if ker:
        # the kernel of an integer matrix is saturated
        assert all(f == 1 for f in intmat.invariant_factors(ker, cols))


def test_kernel_with_fractional_rref():
    # rref of [[2, 3]] has a 3/2 entry, so the HNF route is taken
    ker = intmat.kernel_basis([[2, 3, 0]], 3)
    lat = intmat.EchelonLattice.from_generators(ker, 3)
    assert [-3, 2, 0] in lat and [0, 0, 1] in lat
    assert [-3, 2, 1] in lat
    assert [1, 0, 0] not in lat


def test_echelon_lattice_coordinates():
    lat = intmat.EchelonLattice.from_generators([[2, 0, 2], [0, 3, 3]], 3)
    c = lat.coordinates([2, 3, 5])
    assert c is not None and lat.combine(c) == [2, 3, 5]
    assert lat.coordinates([1, 0, 1]) is None
    assert lat.coordinates([2, 3, 4]) is None
    with pytest.raises(ValueError):
        lat.coordinates([1, 2])


@given(matrices(max_rows=3, max_cols=5, bound=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_echelon_membership_of_combinations(gens, coeffs):
    cols = len(gens[0])
    lat = intmat.EchelonLattice.from_generators(gens, cols)
    vec = [sum(c * row[j] for c, row in zip(coeffs, gens)) for j in range(cols)]
    coords = lat.coordinates(vec)
    assert coords is not None
    assert lat.combine(coords) == vec
    assert lat.coordinates_many([vec]) == [coords]


def test_reverse_echelon_bulk_coordinates():
    ker = intmat.kernel_basis([[1, 2, 3], [0, 1, 1]], 3)
    lat = intmat.EchelonLattice.from_generators(ker, 3)
    assert lat.reverse
    assert lat.coordinates_many([[-1, -1, 1], [1, 1, 1], [-2, -2, 2]]) == [[1], None, [2]]


@settings(max_examples=80, deadline=None)
@given(matrices(max_rows=4, max_cols=5))
def test_saturation_matches_smith(m):
    cols = len(m[0])
    lat = intmat.EchelonLattice.from_generators(m, cols)
    if lat.rank == 0:
        return
    by_smith = all(f == 1 for f in intmat.invariant_factors(lat.basis, cols))
    assert lat.is_saturated() == by_smith


def test_scaled_lattice_not_saturated():
    lat = intmat.EchelonLattice([[2, 0, 4], [0, 1, 1]], 3)
    assert not lat.is_saturated()
    assert intmat.EchelonLattice([[1, 0, 4], [0, 1, 1]], 3).is_saturated()


@settings(max_examples=80, deadline=None)
@given(matrices(max_rows=6, max_cols=4, bound=4))
def test_span_lattice_matches_hermite(m):
    cols = len(m[0])
    lat = intmat.span_lattice(m, cols)
    ref = intmat.EchelonLattice(intmat.hermite_rows(m, cols), cols)
    assert lat.rank == ref.rank
    assert all(r in ref for r in lat.basis) and all(r in lat for r in ref.basis)
    assert all(c is not None for c in lat.coordinates_many(m))


@pytest.mark.parametrize("gens,full", [
    ([[1, 0], [0, 1]], True),
    ([[2, 0], [0, 1]], False),
    ([[2, 0], [3, 0], [0, 1]], True),
    ([[2, 1], [4, 2]], True),
])
def test_generates_all(gens, full):
    sat = intmat.saturation(gens, 2)
    coords = sat.coordinates_many(gens)
    assert intmat.generates_all(coords, sat.rank) == full
