"""Normal form of a class as a combination of fixed generator words.

Every class ``h`` on Q_{2n} is written uniquely as

    h = g_1 + g_2 M_1 + g_3 M_1 M_2 + ... + g_{n+1} M_1...M_n
          + g_{n+2} Delta_{n+2..2n+2} + ... + g_{2n+2} Delta_{2n+2}

with polynomial coefficients ``g_i`` (acting as constant cochains).  The
coefficients are peeled off one vertex at a time in the order 1, 2, ...,
2n+2: at each vertex every earlier term vanishes, so the residual there is
an exact multiple of the next word's value.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .graph_cohomology import Cochain, iota, make_Delta, make_M
from .polyring import NotDivisible, Polynomial, divide_exact_linear, parse
from .quadric_graph import QuadricGraph, _det, build


class NotAClass(ValueError):
    """Raised when the sweep hits a residual that is not divisible by the word value."""

    def __init__(self, vertex: int, divisor: Polynomial, residual: Polynomial):
        self.vertex = vertex
        self.divisor = divisor
        self.residual = residual
        super().__init__(f"residual {residual} at vertex {vertex} is not divisible by {divisor}")


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    g_poly: tuple[Polynomial, ...]
    g_delta: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.g_poly) != self.n + 1 or len(self.g_delta) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficients in each block")

    @classmethod
    def zero(cls, n: int) -> "CanonicalForm":
        z = Polynomial.zero(n + 1)
        return cls(n, (z,) * (n + 1), (z,) * (n + 1))

    @property
    def coefficients(self) -> tuple[Polynomial, ...]:
        """``(g_1, ..., g_{2n+2})``."""
        return self.g_poly + self.g_delta

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def to_json(self) -> dict:
        return {"n": self.n,
                "g_poly": [str(p) for p in self.g_poly],
                "g_delta": [str(p) for p in self.g_delta]}

    @classmethod
    def from_json(cls, data: dict) -> "CanonicalForm":
        n = int(data["n"])
        return cls(n, tuple(parse(t, n + 1) for t in data["g_poly"]),
                   tuple(parse(t, n + 1) for t in data["g_delta"]))

    def pretty(self, m_words: bool = False) -> str:
        """One line per nonzero term; ``m_words`` rewrites coefficients in the M_i."""
        n = self.n
        lines = []
        for idx, g in enumerate(self.coefficients, start=1):
            if not g:
                continue
            coeff = to_m_word(g, n) if m_words else str(g)
            lines.append(f"  + ({coeff}) * {word_name(n, idx)}")
        return "h =\n" + "\n".join(lines) if lines else "h = 0"

    def __str__(self) -> str:
        return self.pretty()


def word_name(n: int, idx: int) -> str:
    """Name of the generator word multiplying ``g_idx``."""
    if idx == 1:
        return "1"
    if idx <= n + 1:
        return "*".join(f"M_{j}" for j in range(1, idx))
    return "Delta_{" + ",".join(map(str, range(idx, 2 * n + 3))) + "}"


def to_m_word(p: Polynomial, n: int) -> str:
    """Rewrite ``p`` through ``x_i = M_{i+1} - M_1``; variables print as M_1..M_{n+2}."""
    m = n + 2
    y = [Polynomial.var(m, i) for i in range(1, m + 1)]
    q = p.substitute([y[i] - y[0] for i in range(1, n + 2)])
    return re.sub(r"x(\d+)", r"M_\1", str(q))


@lru_cache(maxsize=None)
def _words(n: int) -> tuple[QuadricGraph, tuple[Cochain, ...]]:
    g = build(n)
    words = [iota(g, Polynomial.one(g.nvars))]
    acc = words[0]
    for k in range(1, n + 1):
        acc = acc * make_M(g, k)
        words.append(acc)
    for k in range(n + 2, 2 * n + 3):
        words.append(make_Delta(g, range(k, 2 * n + 3)))
    return g, tuple(words)


def sweep_divisors(g: QuadricGraph, k: int) -> list[Polynomial]:
    """Linear factors of the word value at the vertex where ``g_k`` is read off."""
    n = g.n
    if k == 1:
        return []
    if k <= n + 1:
        return [g.alpha_poly(k, j) for j in range(1, k)]
    K = set(range(k, 2 * n + 3))
    return [g.alpha_poly(k, j) for j in g.vertices if j not in K and j != g.bar(k)]


def _check_graph(h: Cochain) -> QuadricGraph:
    g, _ = _words(h.graph.n)
    if h.graph is not g and h.graph.to_json() != g.to_json():
        raise ValueError("cochain lives on a modified graph")
    return g


def reduce(h: Cochain) -> CanonicalForm:
    """Canonical coefficients of the class ``h``; raises :class:`NotAClass`."""
    g = _check_graph(h)
    _, words = _words(g.n)
    residual = list(h.values)
    coeffs = []
    for k in g.vertices:
        r = residual[k - 1]
        factors = sweep_divisors(g, k)
        q = r
        for ell in factors:
            if not q:
                break
            try:
                q = divide_exact_linear(q, ell)
            except NotDivisible:
                raise NotAClass(k, _product(factors, g.nvars), r) from None
        coeffs.append(q)
        if q:
            w = words[k - 1]
            residual = [a - q * b for a, b in zip(residual, w.values)]
    # every vertex has been cleared by construction
    assert not any(residual)
    n = g.n
    return CanonicalForm(n, tuple(coeffs[:n + 1]), tuple(coeffs[n + 1:]))


def _product(factors, nvars: int) -> Polynomial:
    out = Polynomial.one(nvars)
    for f in factors:
        out = out * f
    return out


def evaluate(cf: CanonicalForm) -> Cochain:
    g, words = _words(cf.n)
    vals = [Polynomial.zero(g.nvars)] * len(g.vertices)
    for coeff, w in zip(cf.coefficients, words):
        if coeff:
            vals = [a + coeff * b for a, b in zip(vals, w.values)]
    return Cochain(g, vals)


def is_zero(h: Cochain) -> bool:
    """Zero test through the normal form; agrees with the pointwise test."""
    return reduce(h).is_zero()


def localization_basis(n: int, v: int) -> list[int]:
    """Indices ``I_v`` of the M_i whose values at ``v`` form a basis of linear forms.

    ``I_v = [n+2] - {v}`` when ``v <= n+2`` and ``[n+2] - {bar v}`` otherwise.
    At ``v = n+2`` dropping ``bar v`` instead would keep ``M_v``, which
    vanishes at ``v``.
    """
    if not 1 <= v <= 2 * n + 2:
        raise ValueError(f"{v} is not a vertex")
    drop = v if v <= n + 2 else 2 * n + 3 - v
    return [i for i in range(1, n + 3) if i != drop]


def localization_matrix(n: int, v: int) -> list[tuple[int, ...]]:
    g = build(n)
    return [make_M(g, i)(v).linear_coefficients() for i in localization_basis(n, v)]


def localization_determinant(n: int, v: int) -> int:
    return _det(localization_matrix(n, v))


def localize(h: Cochain, v: int) -> Polynomial:
    """The value ``h(v)``; raises :class:`NotAClass` for a non-class."""
    reduce(h)
    return h(v)
