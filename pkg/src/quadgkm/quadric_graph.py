"""The GKM graph of the even-dimensional quadric Q_{2n} with torus T^{n+1}.

Vertices are ``1..2n+2``; ``bar(v) = 2n+3-v`` and the edges are all pairs
except the bar pairs.  Edge labels come from the vertex labeling ``f`` via
``alpha(i, j) = f(j) - f(i)``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .polyring import LinearForm, Polynomial


def _rank(rows: list[tuple[int, ...]]) -> int:
    """Rank over Q by fraction-free elimination."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for i in range(rank + 1, len(m)):
            a = m[i][col]
            if a:
                m[i] = [p[col] * x - a * y for x, y in zip(m[i], p)]
        rank += 1
    return rank


def _det(rows: list[tuple[int, ...]]) -> int:
    """Exact determinant via Bareiss elimination."""
    m = [list(r) for r in rows]
    size = len(m)
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1] if size else 1


class QuadricGraph:
    """Immutable GKM graph (Gamma_{2n}, alpha) given by its 0-cochain ``f``."""

    def __init__(self, n: int, f: dict[int, LinearForm]):
        if n < 1:
            raise ValueError(f"n must be at least 1, got {n}")
        self.n = n
        self.nvars = n + 1
        self.vertices = tuple(range(1, 2 * n + 3))
        if set(f) != set(self.vertices):
            raise ValueError("f must be defined on every vertex")
        self.f = dict(f)
        self._alpha: dict[tuple[int, int], LinearForm] = {}
        for i, j in self.edges:
            self._alpha[(i, j)] = self.f[j] - self.f[i]

    def bar(self, v: int) -> int:
        if v not in self.vertices:
            raise ValueError(f"{v} is not a vertex of Q_{2 * self.n}")
        return 2 * self.n + 3 - v

    def is_edge(self, i: int, j: int) -> bool:
        return i != j and i + j != 2 * self.n + 3 and i in self.vertices and j in self.vertices

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Unordered edges as pairs ``(i, j)`` with ``i < j``."""
        return tuple((i, j) for i, j in itertools.combinations(self.vertices, 2)
                     if i + j != 2 * self.n + 3)

    def neighbors(self, v: int) -> tuple[int, ...]:
        b = self.bar(v)
        return tuple(w for w in self.vertices if w != v and w != b)

    def alpha(self, i: int, j: int) -> LinearForm:
        """Axial function on the directed edge ``i -> j``."""
        if i < j:
            key = (i, j)
            if key in self._alpha:
                return self._alpha[key]
        elif (j, i) in self._alpha:
            return -self._alpha[(j, i)]
        raise KeyError(f"({i}, {j}) is not an edge of Q_{2 * self.n}")

    def alpha_poly(self, i: int, j: int) -> Polynomial:
        return self.alpha(i, j).to_polynomial()

    def f_poly(self, v: int) -> Polynomial:
        return self.f[v].to_polynomial()

    def x(self, i: int) -> Polynomial:
        return Polynomial.var(self.nvars, i)

    @cached_property
    def middle(self) -> Polynomial:
        """``x_n - x_{n+1}``, the common value of ``f(i) + f(bar i)``."""
        return self.x(self.n) - self.x(self.n + 1)

    def with_flipped_sign(self, i: int, j: int) -> "QuadricGraph":
        """A corrupted copy with ``alpha(i, j)`` negated; only for fault injection."""
        g = object.__new__(QuadricGraph)
        g.__dict__.update(self.__dict__)
        g._alpha = dict(self._alpha)
        key = (min(i, j), max(i, j))
        g._alpha[key] = -g._alpha[key]
        g.__dict__.pop("middle", None)
        return g

    def __repr__(self) -> str:
        return f"QuadricGraph(n={self.n})"

    # -- export -------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "f": {str(v): str(self.f[v]) for v in self.vertices},
            "alpha": {f"{i},{j}": str(self.alpha(i, j)) for i, j in self.edges},
        }

    def to_dot(self) -> str:
        lines = [f"graph Q{2 * self.n} {{"]
        for v in self.vertices:
            lines.append(f'  {v} [label="{v}: {self.f[v]}"];')
        for i, j in self.edges:
            lines.append(f'  {i} -- {j} [label="{self.alpha(i, j)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _f_values(n: int) -> dict[int, LinearForm]:
    m = n + 1

    def x(i):  # x_0 = 0
        c = [0] * m
        if i:
            c[i - 1] = 1
        return LinearForm(c)

    f = {}
    for j in range(1, n + 3):
        f[j] = x(j - 1) - x(n + 1)
    for j in range(n + 3, 2 * n + 3):
        f[j] = x(n) - x(2 * n + 2 - j)
    return f


def build(n: int) -> QuadricGraph:
    return QuadricGraph(n, _f_values(n))


def noneffective_axial(n: int) -> dict[tuple[int, int], LinearForm]:
    """The labels ``x_j - x_i`` of the non-effective action, ``x_i := -x_{bar i}``
    for ``i >= n+2``; keyed by directed edge."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    m = n + 1

    def x(i):
        c = [0] * m
        if i <= m:
            c[i - 1] = 1
        else:
            c[2 * n + 3 - i - 1] = -1
        return LinearForm(c)

    out = {}
    for i in range(1, 2 * n + 3):
        for j in range(1, 2 * n + 3):
            if i != j and i + j != 2 * n + 3:
                out[(i, j)] = x(j) - x(i)
    return out


@dataclass
class EffectivizeReport:
    n: int
    vertex1_matches: bool
    determinant: int
    noneffective_index: int
    all_vertices_match: bool
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.vertex1_matches and abs(self.determinant) == 1


def _solve_rational(basis: list[tuple[int, ...]], target: tuple[int, ...]) -> list[Fraction]:
    """Coordinates of ``target`` in the (square, invertible) ``basis``."""
    size = len(basis)
    # columns of the system are the basis vectors
    a = [[Fraction(basis[c][r]) for c in range(size)] + [Fraction(target[r])] for r in range(size)]
    for col in range(size):
        piv = next(r for r in range(col, size) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                fac = a[r][col]
                a[r] = [v - fac * w for v, w in zip(a[r], a[col])]
    return [a[r][size] for r in range(size)]


def effectivize_check(n: int) -> EffectivizeReport:
    """Check that the basis change at vertex 1 turns the non-effective labels into alpha.

    The change sends ``x_i - x_1 -> x_{i-1}`` (``i = 2..n+1``) and
    ``-x_{n+1} - x_1 -> x_{n+1}``.  The same linear map is then applied at
    every vertex as an extra consistency check.
    """
    g = build(n)
    tilde = noneffective_axial(n)
    m = n + 1
    old_basis = [tilde[(1, i)].coefficients for i in range(2, n + 2)]
    old_basis.append(tilde[(1, n + 2)].coefficients)
    new_basis = [tuple(int(r == c) for c in range(m)) for r in range(m)]

    def transform(form: LinearForm):
        coords = _solve_rational(old_basis, form.coefficients)
        vec = [sum(c * new_basis[k][i] for k, c in enumerate(coords)) for i in range(m)]
        if any(v.denominator != 1 for v in vec):
            return None
        return LinearForm([int(v) for v in vec])

    mismatches = []
    for (i, j), form in tilde.items():
        image = transform(form)
        if image is None or image != g.alpha(i, j):
            mismatches.append((i, j))
    v1 = not any(i == 1 for i, _ in mismatches)
    return EffectivizeReport(
        n=n,
        vertex1_matches=v1,
        determinant=_det(new_basis),
        noneffective_index=abs(_det(old_basis)),
        all_vertices_match=not mismatches,
        mismatches=mismatches,
    )


@dataclass
class ValidationReport:
    n: int
    failures: list[tuple[str, tuple]] = field(default_factory=list)
    checks: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def _count(self, name: str) -> None:
        self.checks[name] = self.checks.get(name, 0) + 1

    def summary(self) -> str:
        lines = [f"Q_{2 * self.n}: " + ("valid" if self.ok else "INVALID")]
        for name, count in self.checks.items():
            lines.append(f"  {name}: {count} checks")
        for name, witness in self.failures:
            lines.append(f"  FAILED {name} at {witness}")
        return "\n".join(lines)


def validate(g: QuadricGraph) -> ValidationReport:
    n = g.n
    rep = ValidationReport(n)
    mid = LinearForm.from_polynomial(g.middle)
    expected_edges = (2 * n + 2) * (2 * n + 1) // 2 - (n + 1)
    rep._count("edge count")
    if len(g.edges) != expected_edges:
        rep.failures.append(("edge count", (len(g.edges), expected_edges)))
    for v in g.vertices:
        rep._count("bar involution")
        b = g.bar(v)
        if b == v or g.bar(b) != v:
            rep.failures.append(("bar involution", (v,)))
        rep._count("regularity")
        if len(g.neighbors(v)) != 2 * n:
            rep.failures.append(("regularity", (v,)))
        rep._count("f(i)+f(bar i)")
        if g.f[v] + g.f[b] != mid:
            rep.failures.append(("f(i)+f(bar i)", (v,)))
    for i, j in g.edges:
        for a, b in ((i, j), (j, i)):
            form = g.alpha(a, b)
            rep._count("alpha = f(j)-f(i)")
            if form != g.f[b] - g.f[a]:
                rep.failures.append(("alpha = f(j)-f(i)", (a, b)))
            rep._count("unit primitive")
            if not (form.is_primitive() and form.is_unit_form()):
                rep.failures.append(("unit primitive", (a, b)))
            rep._count("alpha(ij) = -alpha(bar i bar j)")
            if form != -g.alpha(g.bar(a), g.bar(b)):
                rep.failures.append(("alpha(ij) = -alpha(bar i bar j)", (a, b)))
    for i in g.vertices:
        target = mid - g.f[i] - g.f[i]
        for j in g.neighbors(i):
            rep._count("alpha(ij)+alpha(i bar j)")
            if g.alpha(i, j) + g.alpha(i, g.bar(j)) != target:
                rep.failures.append(("alpha(ij)+alpha(i bar j)", (i, j)))
        nbrs = g.neighbors(i)
        for trio in itertools.combinations(nbrs, 3):
            rep._count("three-independence")
            if _rank([g.alpha(i, j).coefficients for j in trio]) != 3:
                rep.failures.append(("three-independence", (i,) + trio))
        for j, k in itertools.combinations(nbrs, 2):
            rep._count("pairwise independence")
            if _rank([g.alpha(i, j).coefficients, g.alpha(i, k).coefficients]) != 2:
                rep.failures.append(("pairwise independence", (i, j, k)))
    return rep


def graph_json(g: QuadricGraph) -> str:
    return json.dumps(g.to_json(), indent=2)
