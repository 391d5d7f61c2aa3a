"""Ordinary cohomology of Q_{2n} as the class lattice modulo the ideal J.

J is generated by the differences ``M_{i+1} - M_1``, which are the constant
classes ``x_i``.  In each degree its span is therefore the set of
``x_i * b`` with ``b`` a class one degree lower.  All congruences "mod J"
below are membership tests in that sublattice of the oracle lattice.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import intmat
from .graph_cohomology import Cochain, PreconditionError, make_Delta, make_M, property_star
from .lattice_oracle import DegreeLattice, betti_numbers, cached_class_basis
from .quadric_graph import build


@dataclass
class JSpan:
    n: int
    d: int
    lattice: DegreeLattice
    generators: list[list[int]]  # coordinates in lattice.basis
    echelon: intmat.EchelonLattice

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def coordinates(self, h: Cochain) -> list[int]:
        from .lattice_oracle import membership
        return membership(h, self.lattice)

    def contains(self, h: Cochain) -> bool:
        """Is the class ``h`` (of this degree) congruent to 0 mod J?"""
        if h.is_zero():
            return True
        return self.coordinates(h) in self.echelon


def _shift_by_variable(low: DegreeLattice, high: DegreeLattice, i: int) -> list[list[int]]:
    """Vectors of ``x_i * b`` for every basis vector ``b`` of ``low``."""
    lo_size, hi_size = len(low.monomials), len(high.monomials)
    hi_idx = {e: k for k, e in enumerate(high.monomials)}
    target = []
    for e in low.monomials:
        f = list(e)
        f[i - 1] += 1
        target.append(hi_idx[tuple(f)])
    nverts = len(low.graph.vertices)
    out = []
    for row in low.lattice.basis:
        vec = [0] * high.ambient
        for v in range(nverts):
            for k in range(lo_size):
                c = row[v * lo_size + k]
                if c:
                    vec[v * hi_size + target[k]] = c
        out.append(vec)
    return out


@lru_cache(maxsize=None)
def jspan(n: int, d: int) -> JSpan:
    """The degree-2d part of J, as a sublattice of the class lattice."""
    if d < 1:
        raise ValueError("J has no elements of degree 0")
    high = cached_class_basis(n, d)
    low = cached_class_basis(n, d - 1)
    vecs = []
    for i in range(1, n + 2):
        vecs.extend(_shift_by_variable(low, high, i))
    coords = high.lattice.coordinates_many(vecs)
    if any(c is None for c in coords):
        raise AssertionError("x_i * class left the class lattice")
    echelon = intmat.span_lattice(coords, high.rank)
    return JSpan(n, d, high, coords, echelon)


@dataclass
class OrdinaryDegree:
    n: int
    degree: int
    quotient_rank: int
    quotient_basis: list[Cochain]
    torsion: list[int] = field(default_factory=list)


@lru_cache(maxsize=None)
def ordinary_degree(n: int, d: int) -> OrdinaryDegree:
    L = cached_class_basis(n, d)
    if d == 0:
        return OrdinaryDegree(n, 0, L.rank, L.basis, [])
    J = jspan(n, d)
    # same row lattice as the generators, far fewer rows
    factors = J.echelon.invariant_factors() if J.rank else []
    torsion = [f for f in factors if f > 1]
    # representatives: unit vectors off the pivot columns of the J lattice
    pivots = set(J.echelon.pivots) if not J.echelon.reverse else {
        L.rank - 1 - p for p in J.echelon.pivots}
    reps = []
    for j in range(L.rank):
        if j not in pivots:
            reps.append(L.cochain(L.lattice.basis[j]))
    return OrdinaryDegree(n, 2 * d, L.rank - J.rank, reps, torsion)


def betti_table(n: int) -> list[OrdinaryDegree]:
    """Quotient ranks for d = 0..2n (everything above vanishes, see ``vanishes_above``)."""
    return [ordinary_degree(n, d) for d in range(2 * n + 1)]


def expected_betti(n: int) -> list[int]:
    return betti_numbers(n)


def vanishes_above(n: int) -> bool:
    """Quotient rank 0 in degree 2(2n+1)."""
    return ordinary_degree(n, 2 * n + 1).quotient_rank == 0


def congruent_mod_J(a: Cochain, b: Cochain) -> bool:
    """``a == b`` mod J, for classes of the same positive degree."""
    diff = a - b
    if diff.is_zero():
        return True
    d = diff.degree()
    if d is None:
        raise ValueError("difference is not homogeneous")
    if d == 0:
        return False
    return jspan(a.graph.n, d).contains(diff)


# -- rewriting Delta_K --------------------------------------------------------

def _top_set(n: int, K) -> frozenset[int]:
    g = build(n)
    K = frozenset(K)
    if len(K) != n + 1 or not property_star(g, K):
        raise PreconditionError(f"K={sorted(K)} must have {n + 1} elements and no bar pair")
    return K


def rewrite_delta_mod_J(n: int, K) -> frozenset[int]:
    """Replace the two largest members of K by their bars."""
    K = _top_set(n, K)
    members = sorted(K)
    bar = 2 * n + 3
    return frozenset(members[:-2] + [bar - members[-2], bar - members[-1]])


def rewrite_certificate(n: int, K) -> tuple[frozenset[int], bool]:
    """The rewritten set and whether ``Delta_K - Delta_rewritten`` lies in J."""
    K = _top_set(n, K)
    H = rewrite_delta_mod_J(n, K)
    g = build(n)
    return H, congruent_mod_J(make_Delta(g, K), make_Delta(g, H))


def top_sets(n: int) -> list[frozenset[int]]:
    """All K with |K| = n+1 and no bar pair (one vertex from each pair)."""
    pairs = [(i, 2 * n + 3 - i) for i in range(1, n + 2)]
    return [frozenset(c) for c in itertools.product(*pairs)]


def bar_parity(n: int, K) -> int:
    """Number of members above n+1, mod 2."""
    return sum(1 for v in K if v > n + 1) % 2


# -- parity corollary and the (c, x) presentation ------------------------------

@dataclass
class ParityReport:
    n: int
    vanishing: dict = field(default_factory=dict)      # (K, i) or K -> bool
    non_vanishing: dict = field(default_factory=dict)  # K -> bool (True: not in J)

    @property
    def ok(self) -> bool:
        return all(self.vanishing.values()) and all(self.non_vanishing.values())

    @property
    def verdict(self) -> str:
        return "x^2 = c^n x" if self.n % 2 == 0 else "x^2 = 0"


def parity_check(n: int) -> ParityReport:
    """For n even: Delta_K (M_i^n - Delta_K) in J for all i; for n odd: Delta_K^2 in J.

    The opposite product is checked to be outside J in both cases.
    """
    g = build(n)
    rep = ParityReport(n)
    J = jspan(n, 2 * n)
    Ms = {i: make_M(g, i) ** n for i in g.vertices}
    for K in top_sets(n):
        D = make_Delta(g, K)
        sq = D * D
        key = tuple(sorted(K))
        if n % 2 == 0:
            for i in g.vertices:
                rep.vanishing[(key, i)] = J.contains(D * (Ms[i] - D))
            rep.non_vanishing[key] = not J.contains(sq)
        else:
            rep.vanishing[key] = J.contains(sq)
            rep.non_vanishing[key] = not J.contains(D * (Ms[1] - D))
    return rep


@dataclass
class LaiReport:
    n: int
    K: tuple[int, ...]
    relations: dict = field(default_factory=dict)
    basis_certified: dict = field(default_factory=dict)
    non_vanishing: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (all(self.relations.values()) and all(self.basis_certified.values())
                and all(self.non_vanishing.values()))


def _spans_with(n: int, d: int, extra: list[Cochain]) -> bool:
    """J in degree 2d together with ``extra`` is the whole class lattice, unimodularly."""
    L = cached_class_basis(n, d)
    rows = [] if d == 0 else list(jspan(n, d).echelon.basis)
    from .lattice_oracle import membership
    rows += [membership(c, L) for c in extra]
    factors = intmat.invariant_factors(rows, L.rank)
    return len(factors) == L.rank and all(f == 1 for f in factors)


def quotient_candidates(n: int, d: int, c: Cochain, x: Cochain) -> list[Cochain]:
    if d < n:
        return [c ** d]
    if d == n:
        return [c ** n, x]
    return [c ** (d - n) * x]


def lai_presentation_check(n: int, K=None) -> LaiReport:
    """Relations c^{n+1} = 2cx and x^2 = c^n x (n even) or x^2 = 0 (n odd) mod J,
    with c = M_1 and x = Delta_K; plus the monomial basis of the quotient."""
    g = build(n)
    K = tuple(sorted(K)) if K is not None else tuple(range(n + 2, 2 * n + 3))
    _top_set(n, K)
    rep = LaiReport(n, K)
    c = make_M(g, 1)
    x = make_Delta(g, K)
    cx = c * x
    rep.relations[f"c^{n + 1} - 2cx"] = jspan(n, n + 1).contains(c ** (n + 1) - 2 * cx)
    xx = x * x
    if n % 2 == 0:
        rep.relations[f"x^2 - c^{n}x"] = jspan(n, 2 * n).contains(xx - c ** n * x)
        rep.non_vanishing["x^2"] = not jspan(n, 2 * n).contains(xx)
    else:
        rep.relations["x^2"] = jspan(n, 2 * n).contains(xx)
        rep.non_vanishing[f"c^{n}x"] = not jspan(n, 2 * n).contains(c ** n * x)
    for d in range(2 * n + 1):
        rep.basis_certified[d] = _spans_with(n, d, quotient_candidates(n, d, c, x))
    return rep


def all_M_congruent(n: int) -> dict[int, bool]:
    """M_v - M_1 in J for every vertex v."""
    g = build(n)
    M1 = make_M(g, 1)
    return {v: congruent_mod_J(make_M(g, v), M1) for v in g.vertices}


def delta_classes_mod_J(n: int) -> list[list[tuple[int, ...]]]:
    """Partition the top Delta_K into classes of equality mod J."""
    g = build(n)
    groups: list[list[tuple[int, ...]]] = []
    reps: list[Cochain] = []
    for K in sorted(top_sets(n), key=sorted):
        D = make_Delta(g, K)
        for grp, r in zip(groups, reps):
            if congruent_mod_J(D, r):
                grp.append(tuple(sorted(K)))
                break
        else:
            groups.append([tuple(sorted(K))])
            reps.append(D)
    return groups
