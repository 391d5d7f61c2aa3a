"""Graph equivariant cohomology of Q_{2n}: cochains, generators and relations.

A cochain assigns a polynomial to every vertex; it is a class when on
every edge ``ij`` the difference ``h(i) - h(j)`` is divisible by
``alpha(i, j)``.  Ring operations act vertex by vertex.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .polyring import NotDivisible, Polynomial, divide_exact_linear, elementary_symmetric
from .quadric_graph import QuadricGraph


class PreconditionError(ValueError):
    pass


class Cochain:
    __slots__ = ("graph", "values")

    def __init__(self, graph: QuadricGraph, values: Sequence[Polynomial]):
        if len(values) != len(graph.vertices):
            raise ValueError(f"expected {len(graph.vertices)} vertex values, got {len(values)}")
        self.graph = graph
        self.values = tuple(values)

    @classmethod
    def from_mapping(cls, graph: QuadricGraph, mapping: dict[int, Polynomial]) -> "Cochain":
        zero = Polynomial.zero(graph.nvars)
        return cls(graph, [mapping.get(v, zero) for v in graph.vertices])

    @classmethod
    def zero(cls, graph: QuadricGraph) -> "Cochain":
        return iota(graph, Polynomial.zero(graph.nvars))

    def __call__(self, v: int) -> Polynomial:
        return self.values[v - 1]

    def __getitem__(self, v: int) -> Polynomial:
        return self.values[v - 1]

    def _other(self, other) -> tuple[Polynomial, ...] | None:
        if isinstance(other, Cochain):
            if other.graph.n != self.graph.n:
                raise ValueError("cochains live on different graphs")
            return other.values
        if isinstance(other, Polynomial):
            return (other,) * len(self.values)
        if isinstance(other, int):
            return (Polynomial.constant(self.graph.nvars, other),) * len(self.values)
        return None

    def __add__(self, other) -> "Cochain":
        vals = self._other(other)
        if vals is None:
            return NotImplemented
        return Cochain(self.graph, [a + b for a, b in zip(self.values, vals)])

    __radd__ = __add__

    def __sub__(self, other) -> "Cochain":
        vals = self._other(other)
        if vals is None:
            return NotImplemented
        return Cochain(self.graph, [a - b for a, b in zip(self.values, vals)])

    def __rsub__(self, other) -> "Cochain":
        return (-self) + other

    def __neg__(self) -> "Cochain":
        return Cochain(self.graph, [-a for a in self.values])

    def __mul__(self, other) -> "Cochain":
        vals = self._other(other)
        if vals is None:
            return NotImplemented
        return Cochain(self.graph, [a * b for a, b in zip(self.values, vals)])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Cochain":
        return Cochain(self.graph, [a ** k for a in self.values])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.graph.n == other.graph.n and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.graph.n, self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def support(self) -> frozenset[int]:
        return frozenset(v for v, p in zip(self.graph.vertices, self.values) if p)

    def degree(self) -> int | None:
        """Common polynomial degree of all nonzero values, or None if mixed."""
        degs = set()
        for p in self.values:
            if p:
                if not p.is_homogeneous():
                    return None
                degs.add(p.degree())
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def __repr__(self) -> str:
        body = ", ".join(f"{v}: {p}" for v, p in zip(self.graph.vertices, self.values))
        return f"Cochain({{{body}}})"

    def to_json(self) -> dict:
        return {"n": self.graph.n,
                "values": {str(v): str(p) for v, p in zip(self.graph.vertices, self.values)}}

    @classmethod
    def from_json(cls, graph: QuadricGraph, data: dict) -> "Cochain":
        from .polyring import parse
        values = data["values"] if "values" in data else data
        mapping = {int(v): parse(str(t), graph.nvars) for v, t in values.items()}
        unknown = set(mapping) - set(graph.vertices)
        if unknown:
            raise ValueError(f"unknown vertices {sorted(unknown)}")
        return cls.from_mapping(graph, mapping)


# -- vertex sets -------------------------------------------------------------

def property_star(g: QuadricGraph, members: Iterable[int]) -> bool:
    """No bar pair inside ``members`` (equivalently, the full subgraph is complete)."""
    s = set(members)
    return all(v in g.vertices for v in s) and all(g.bar(v) not in s for v in s)


def star_sets(g: QuadricGraph, size: int | None = None) -> list[frozenset[int]]:
    """All nonempty vertex sets with property (*), optionally of one size."""
    out = []
    pairs = [(i, g.bar(i)) for i in range(1, g.n + 2)]
    # choose for each bar pair: absent, the low vertex, or the high vertex
    for choice in itertools.product((None, 0, 1), repeat=len(pairs)):
        members = frozenset(p[c] for p, c in zip(pairs, choice) if c is not None)
        if members and (size is None or len(members) == size):
            out.append(members)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _vertex_set(g: QuadricGraph, members: Iterable[int]) -> frozenset[int]:
    s = frozenset(members)
    bad = [v for v in s if v not in g.vertices]
    if bad:
        raise PreconditionError(f"vertices {sorted(bad)} not in Q_{2 * g.n}")
    return s


# -- class membership --------------------------------------------------------

def is_class(c: Cochain) -> tuple[bool, tuple[int, int] | None]:
    """Check every congruence ``h(i) - h(j) = 0 mod alpha(i, j)``.

    Returns ``(True, None)`` or ``(False, (i, j))`` for the first violating edge.
    """
    g = c.graph
    for i, j in g.edges:
        diff = c(i) - c(j)
        if not diff:
            continue
        try:
            divide_exact_linear(diff, g.alpha(i, j))
        except NotDivisible:
            return False, (i, j)
    return True, None


# -- generators --------------------------------------------------------------

def iota(g: QuadricGraph, p: Polynomial) -> Cochain:
    return Cochain(g, [p] * len(g.vertices))


def make_M(g: QuadricGraph, v: int) -> Cochain:
    b = g.bar(v)
    vals = []
    for j in g.vertices:
        if j == v:
            vals.append(Polynomial.zero(g.nvars))
        elif j == b:
            vals.append(g.middle - 2 * g.f_poly(b))
        else:
            vals.append(g.alpha_poly(j, v))
    return Cochain(g, vals)


def make_X(g: QuadricGraph) -> Cochain:
    return Cochain(g, [g.middle - 2 * g.f_poly(k) for k in g.vertices])


def make_Delta(g: QuadricGraph, K: Iterable[int]) -> Cochain:
    K = _vertex_set(g, K)
    if not K:
        raise PreconditionError("Delta_K needs a nonempty K")
    if not property_star(g, K):
        raise PreconditionError(f"{sorted(K)} contains a bar pair")
    vals = []
    for j in g.vertices:
        if j in K:
            val = Polynomial.one(g.nvars)
            for k in g.vertices:
                if k not in K and k != g.bar(j):
                    val = val * g.alpha_poly(j, k)
            vals.append(val)
        else:
            vals.append(Polynomial.zero(g.nvars))
    return Cochain(g, vals)


def delta_degree(g: QuadricGraph, size: int) -> int:
    """Cohomological degree of Delta_K for ``|K| = size``."""
    return 4 * g.n - 2 * size + 2


@dataclass(frozen=True)
class GeneratorId:
    """Either ``M(v)`` or ``Delta(K)``; resolves the overloaded G_J notation."""

    kind: str
    vertex: int | None = None
    members: frozenset[int] | None = None

    @classmethod
    def M(cls, v: int) -> "GeneratorId":
        return cls("M", vertex=v)

    @classmethod
    def Delta(cls, K: Iterable[int]) -> "GeneratorId":
        return cls("Delta", members=frozenset(K))

    @classmethod
    def from_J(cls, g: QuadricGraph, J: Iterable[int]) -> "GeneratorId":
        J = _vertex_set(g, J)
        missing = set(g.vertices) - J
        if len(missing) == 1:
            return cls.M(missing.pop())
        if J and property_star(g, J):
            return cls.Delta(J)
        raise PreconditionError(f"{sorted(J)} indexes no generator")

    def J(self, g: QuadricGraph) -> frozenset[int]:
        if self.kind == "M":
            return frozenset(g.vertices) - {self.vertex}
        return self.members

    def cochain(self, g: QuadricGraph) -> Cochain:
        if self.kind == "M":
            return make_M(g, self.vertex)
        return make_Delta(g, self.members)

    def __str__(self) -> str:
        if self.kind == "M":
            return f"M_{self.vertex}"
        return "Delta_{" + ",".join(map(str, sorted(self.members))) + "}"


def all_generators(g: QuadricGraph) -> list[GeneratorId]:
    return [GeneratorId.M(v) for v in g.vertices] + [GeneratorId.Delta(K) for K in star_sets(g)]


# -- relations ---------------------------------------------------------------

@dataclass
class RelationCheck:
    lhs: Cochain
    rhs: Cochain
    equal: bool
    label: str = ""

    def __bool__(self) -> bool:
        return self.equal


@dataclass
class Relation1Result:
    applicable: bool
    holds: bool
    product: Cochain | None


def _as_generator(g: QuadricGraph, item) -> GeneratorId:
    if isinstance(item, GeneratorId):
        return item
    return GeneratorId.from_J(g, item)


def verify_relation1(g: QuadricGraph, Js: Sequence, cache: dict | None = None) -> Relation1Result:
    """Products of G_J over a family with empty common intersection vanish.

    Items of ``Js`` are vertex sets J or :class:`GeneratorId` values.
    """
    gens = [_as_generator(g, item) for item in Js]
    if not gens:
        return Relation1Result(False, True, None)
    common = frozenset(g.vertices)
    for gen in gens:
        common &= gen.J(g)
    if common:
        return Relation1Result(False, True, None)
    cochains = []
    for gen in gens:
        if cache is not None:
            if gen not in cache:
                cache[gen] = gen.cochain(g)
            cochains.append(cache[gen])
        else:
            cochains.append(gen.cochain(g))
    product = cochains[0]
    for c in cochains[1:]:
        product = product * c
    return Relation1Result(True, product.is_zero(), product)


def verify_relation2(g: QuadricGraph, v: int, w: int) -> RelationCheck:
    lhs = make_M(g, v) + make_M(g, g.bar(v))
    rhs = make_M(g, w) + make_M(g, g.bar(w))
    return RelationCheck(lhs, rhs, lhs == rhs, f"M_{v}+M_{g.bar(v)} = M_{w}+M_{g.bar(w)}")


def relation3_pair(g: QuadricGraph, I: Iterable[int]) -> tuple[int, int]:
    I = _vertex_set(g, I)
    if len(I) != g.n or not property_star(g, I):
        raise PreconditionError(f"I={sorted(I)} must have {g.n} elements and property (*)")
    rest = [v for v in g.vertices if v not in I and g.bar(v) not in I]
    a, b = sorted(rest)
    return a, b


def verify_relation3(g: QuadricGraph, I: Iterable[int]) -> RelationCheck:
    I = _vertex_set(g, I)
    a, abar = relation3_pair(g, I)
    complement = frozenset(g.vertices) - I
    lhs = iota(g, Polynomial.one(g.nvars))
    for i in sorted(I):
        lhs = lhs * make_M(g, i)
    K1, K2 = complement - {a}, complement - {abar}
    rhs = make_Delta(g, K1) + make_Delta(g, K2)
    label = (" * ".join(f"M_{i}" for i in sorted(I)) + " = "
             + " + ".join(str(GeneratorId.Delta(K)) for K in (K1, K2)))
    return RelationCheck(lhs, rhs, lhs == rhs, label)


def verify_relation4(g: QuadricGraph, K: Iterable[int], i: int) -> RelationCheck:
    K = _vertex_set(g, K)
    if i not in K or len(K) < 2:
        raise PreconditionError(f"need {i} in K and |K| >= 2, got K={sorted(K)}")
    lhs = make_Delta(g, K) * make_M(g, i)
    rhs = make_Delta(g, K - {i})
    return RelationCheck(lhs, rhs, lhs == rhs,
                         f"{GeneratorId.Delta(K)} * M_{i} = {GeneratorId.Delta(K - {i})}")


def _esym_cochain(g: QuadricGraph, j: int, inputs: list[Cochain]) -> Cochain:
    one = Polynomial.one(g.nvars)
    return Cochain(g, [elementary_symmetric(j, [c(v) for c in inputs], one=one)
                       for v in g.vertices])


def product_rhs_factor(g: QuadricGraph, K: frozenset[int], H: frozenset[int]) -> tuple[Cochain, str]:
    """The factor sum_i (-1)^i X^i S_{k-i}(M_v | v not in K u H) and its symbolic form."""
    k = len(K & H) - 1
    outside = [v for v in g.vertices if v not in K | H]
    Ms = [make_M(g, v) for v in outside]
    X = make_X(g)
    total = Cochain.zero(g)
    words = []
    for i in range(k + 1):
        sign = -1 if i % 2 else 1
        total = total + sign * (X ** i) * _esym_cochain(g, k - i, Ms)
        for subset in itertools.combinations(outside, k - i):
            factors = ([("X" if i == 1 else f"X^{i}")] if i else []) + [f"M_{v}" for v in subset]
            words.append((sign, "*".join(factors) or "1"))
    text = ""
    for sign, word in words:
        if not text:
            text = ("-" if sign < 0 else "") + word
        else:
            text += (" - " if sign < 0 else " + ") + word
    return total, text or "0"


def product_formula(g: QuadricGraph, K: Iterable[int], H: Iterable[int]) -> RelationCheck:
    """Delta_K * Delta_H against Delta_{K n H} times the symmetric-function factor."""
    K, H = _vertex_set(g, K), _vertex_set(g, H)
    for name, S in (("K", K), ("H", H)):
        if len(S) != g.n + 1 or not property_star(g, S):
            raise PreconditionError(f"{name}={sorted(S)} must have {g.n + 1} elements and property (*)")
    lhs = make_Delta(g, K) * make_Delta(g, H)
    common = K & H
    if not common:
        rhs = Cochain.zero(g)
        text = "0"
    else:
        factor, text = product_rhs_factor(g, K, H)
        rhs = make_Delta(g, common) * factor
    return RelationCheck(lhs, rhs, lhs == rhs,
                         f"{GeneratorId.Delta(K)} * {GeneratorId.Delta(H)} = "
                         + (f"{GeneratorId.Delta(common)} * ({text})" if common else "0"))


def uniqueness_probe_M(g: QuadricGraph, v: int, A: Cochain) -> bool:
    """Is a class agreeing with M_v off ``{v, bar v}`` necessarily M_v?"""
    M = make_M(g, v)
    off = [j for j in g.vertices if j not in (v, g.bar(v))]
    if any(A(j) != M(j) for j in off):
        raise PreconditionError(f"candidate differs from M_{v} away from {v} and its bar")
    ok, edge = is_class(A)
    if not ok:
        raise PreconditionError(f"candidate is not a class (edge {edge})")
    return A == M

