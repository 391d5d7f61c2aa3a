"""Brute-force lattice of degree-2d classes, straight from the congruences.

Each vertex value is an unknown integer vector over the degree-d monomials,
and each edge ``ij`` contributes ``h(i) - h(j) = alpha(ij) * q_ij`` with an
unknown quotient ``q_ij`` of degree d-1.  The class lattice is the
projection of the integer kernel onto the vertex unknowns.  No polynomial
division is used anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from . import intmat
from .graph_cohomology import Cochain
from .polyring import Polynomial, monomials
from .quadric_graph import QuadricGraph, build


class NotInLattice(ValueError):
    pass


def betti_numbers(n: int) -> list[int]:
    """Even Betti numbers b_0, b_2, ..., b_{4n} of Q_{2n}."""
    return [2 if i == n else 1 for i in range(2 * n + 1)]


def hilbert_rank_expected(n: int, d: int) -> int:
    """Rank of the degree-2d part of a free H*(BT^{n+1})-module with the
    Betti numbers of Q_{2n} as generator counts."""
    if d < 0:
        return 0
    return sum(b * comb(d - i + n, n) for i, b in enumerate(betti_numbers(n)) if d >= i)


def multiplication_matrix(coeffs: tuple[int, ...], d: int) -> list[list[int]]:
    """Matrix of ``q -> ell * q`` from degree d-1 to degree d (rows: degree-d monomials)."""
    m = len(coeffs)
    rows_idx = {e: r for r, e in enumerate(monomials(m, d))}
    low = monomials(m, d - 1)
    mat = [[0] * len(low) for _ in rows_idx]
    for c, e1 in enumerate(low):
        for k, a in enumerate(coeffs):
            if a:
                e = list(e1)
                e[k] += 1
                mat[rows_idx[tuple(e)]][c] += a
    return mat


@dataclass
class DegreeLattice:
    n: int
    degree: int  # cohomological degree 2d
    monomials: list[tuple[int, ...]]
    lattice: intmat.EchelonLattice
    graph: QuadricGraph
    edge_torsion: list[tuple[tuple[int, int], list[int]]] = field(default_factory=list)

    @property
    def d(self) -> int:
        return self.degree // 2

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def ambient(self) -> int:
        return self.lattice.ambient

    def vector(self, h: Cochain) -> list[int]:
        """Coefficient vector of a cochain homogeneous of this degree."""
        idx = {e: i for i, e in enumerate(self.monomials)}
        size = len(self.monomials)
        vec = [0] * self.ambient
        for v, p in zip(h.graph.vertices, h.values):
            for e, c in p.terms.items():
                if e not in idx:
                    raise ValueError(f"term of degree {sum(e)} in a degree-{self.degree} lattice")
                vec[(v - 1) * size + idx[e]] = c
        return vec

    def cochain(self, vec) -> Cochain:
        size = len(self.monomials)
        values = []
        for v in self.graph.vertices:
            chunk = vec[(v - 1) * size: v * size]
            values.append(Polynomial(self.graph.nvars,
                                     {e: c for e, c in zip(self.monomials, chunk) if c}))
        return Cochain(self.graph, values)

    @property
    def basis(self) -> list[Cochain]:
        return [self.cochain(row) for row in self.lattice.basis]


@lru_cache(maxsize=None)
def _left_kernel(coeffs: tuple[int, ...], d: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Left kernel of multiplication by ``coeffs`` and its nontrivial invariant factors."""
    mult = multiplication_matrix(coeffs, d)
    size = len(mult)
    factors = tuple(f for f in intmat.invariant_factors(mult) if f != 1)
    # left kernel of mult = kernel of its transpose
    left = intmat.kernel_basis([list(col) for col in zip(*mult)], size)
    return tuple(tuple(u) for u in left), factors


def _edge_constraints(g: QuadricGraph, d: int, mons, torsion) -> list[list[int]]:
    """Rows ``C (h_i - h_j) = 0`` where C spans the left kernel of multiplication by alpha."""
    size = len(mons)
    rows = []
    for i, j in g.edges:
        coeffs = g.alpha(i, j).coefficients
        if next(c for c in coeffs if c) < 0:  # the kernel does not see the sign
            coeffs = tuple(-c for c in coeffs)
        left, factors = _left_kernel(coeffs, d)
        if factors:
            torsion.append(((i, j), list(factors)))
        for u in left:
            row = [0] * (len(g.vertices) * size)
            for c, x in enumerate(u):
                if x:
                    row[(i - 1) * size + c] = x
                    row[(j - 1) * size + c] = -x
            rows.append(row)
    return rows


def _full_system(g: QuadricGraph, d: int, mons) -> tuple[list[list[int]], int]:
    """The congruence system with the edge quotients kept as unknowns."""
    size = len(mons)
    low = monomials(g.nvars, d - 1)
    nv = len(g.vertices) * size
    ncols = nv + len(g.edges) * len(low)
    rows = []
    for ei, (i, j) in enumerate(g.edges):
        mult = multiplication_matrix(g.alpha(i, j).coefficients, d)
        for r in range(size):
            row = [0] * ncols
            row[(i - 1) * size + r] += 1
            row[(j - 1) * size + r] -= 1
            for c, a in enumerate(mult[r]):
                if a:
                    row[nv + ei * len(low) + c] = -a
            rows.append(row)
    return rows, ncols


def class_basis(g: QuadricGraph, d: int, eliminate: bool = True) -> DegreeLattice:
    """Lattice of classes whose vertex values are homogeneous of polynomial degree ``d``.

    With ``eliminate`` the edge quotients are removed edge by edge (valid
    because the image of multiplication by a primitive form is saturated;
    checked and reported as ``edge_torsion``).  Without it the full system is
    solved and the kernel projected.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    mons = monomials(g.nvars, d)
    nv = len(g.vertices) * len(mons)
    torsion: list = []
    if d == 0:
        # constants: every congruence reads h(i) - h(j) = 0
        rows = []
        for i, j in g.edges:
            row = [0] * nv
            row[i - 1], row[j - 1] = 1, -1
            rows.append(row)
        kernel = intmat.kernel_basis(rows, nv)
    elif eliminate:
        rows = _edge_constraints(g, d, mons, torsion)
        if torsion:
            rows, ncols = _full_system(g, d, mons)
            kernel = [v[:nv] for v in intmat.kernel_basis(rows, ncols)]
        else:
            kernel = intmat.kernel_basis(rows, nv)
    else:
        rows, ncols = _full_system(g, d, mons)
        kernel = [v[:nv] for v in intmat.kernel_basis(rows, ncols)]
    lattice = intmat.EchelonLattice.from_generators(kernel, nv) if kernel else intmat.EchelonLattice([], nv)
    return DegreeLattice(n=g.n, degree=2 * d, monomials=mons, lattice=lattice,
                         graph=g, edge_torsion=torsion)


@lru_cache(maxsize=None)
def cached_class_basis(n: int, d: int) -> DegreeLattice:
    return class_basis(build(n), d)


def membership(h: Cochain, L: DegreeLattice) -> list[int]:
    """Integer coordinates of ``h`` in ``L.basis``; raises :class:`NotInLattice`."""
    deg = h.degree()
    if deg is None or (deg != L.d and not h.is_zero()):
        raise ValueError(f"cochain is not homogeneous of degree {L.degree}")
    coords = L.lattice.coordinates(L.vector(h))
    if coords is None:
        raise NotInLattice("cochain is not an integral combination of the class basis")
    return coords


def reconstruct(coords, L: DegreeLattice) -> Cochain:
    return L.cochain(L.lattice.combine(coords))


def is_saturated(L: DegreeLattice) -> bool:
    """Basis spans a pure sublattice: all invariant factors equal 1."""
    if L.rank == 0:
        return True
    return L.lattice.is_saturated()


def rank_table(n: int, max_d: int) -> list[dict]:
    g = build(n)
    out = []
    for d in range(max_d + 1):
        L = class_basis(g, d)
        out.append({"d": d, "degree": 2 * d, "rank": L.rank,
                    "expected": hilbert_rank_expected(n, d),
                    "torsion": [f for _, fs in L.edge_torsion for f in fs]})
    return out
