"""Exact multivariate polynomials over the integers in variables x1..x{m}.

Polynomials are immutable: the term dictionary is never mutated after
construction.  Cohomological degree is twice the polynomial degree, so a
polynomial of (polynomial) degree ``d`` represents a degree ``2d`` class.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class NotDivisible(ArithmeticError):
    """Raised when a polynomial is not a multiple of a linear form."""


class Polynomial:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        self.nvars = nvars
        clean: dict[Exponent, int] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                if c:
                    clean[exp] = int(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, int]) -> "Polynomial":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def constant(cls, nvars: int, c: int) -> "Polynomial":
        return cls._raw(nvars, {(0,) * nvars: int(c)} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"x{i} is not one of x1..x{nvars}")
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls._raw(nvars, {tuple(exp): 1})

    @classmethod
    def linear(cls, coefficients: Sequence[int]) -> "Polynomial":
        m = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            if c:
                exp = [0] * m
                exp[i] = 1
                terms[tuple(exp)] = int(c)
        return cls._raw(m, terms)

    # -- basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def coefficient(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def linear_coefficients(self) -> tuple[int, ...]:
        """Coefficient vector of a homogeneous degree-1 polynomial."""
        if not self.is_homogeneous(1):
            raise ValueError(f"{self} is not a linear form")
        out = [0] * self.nvars
        for exp, c in self.terms.items():
            out[exp.index(1)] = c
        return tuple(out)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if other == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.nvars)
        terms: dict[Exponent, int] = {}
        get = terms.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = get(e, 0) + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def substitute(self, values: Sequence["Polynomial | int | Fraction"]):
        """Evaluate with ``x_i -> values[i-1]``; values may be polynomials or numbers."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(values, exp):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    # -- printing -----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exp) if e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, '{self}')"

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": c} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[Mapping]) -> "Polynomial":
        p = cls.zero(nvars)
        for item in data:
            p = p + cls(nvars, {tuple(item["exponents"]): int(item["coeff"])})
        return p


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+)|x(\d+)(?:\^(\d+))?)$")


def parse(text: str, nvars: int) -> Polynomial:
    """Parse text such as ``x2 - 2*x1 + x3`` or ``-x1^2*x3 + 4``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    pos = 0
    result = Polynomial.zero(nvars)
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign
        exp = [0] * nvars
        for factor in m.group(2).strip().split("*"):
            fm = _FACTOR.match(factor.strip())
            if not fm:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            if fm.group(1) is not None:
                coeff *= int(fm.group(1))
            else:
                i = int(fm.group(2))
                if not 1 <= i <= nvars:
                    raise ValueError(f"x{i} out of range for {nvars} variables")
                exp[i - 1] += int(fm.group(3) or 1)
        result = result + Polynomial(nvars, {tuple(exp): coeff})
        pos = m.end()
    return result


class LinearForm:
    """A nonzero-or-zero integer linear form, stored as its coefficient vector."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[int]):
        self.coefficients = tuple(int(c) for c in coefficients)
        if not self.coefficients:
            raise ValueError("empty linear form")

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "LinearForm":
        if p.is_zero():
            return cls((0,) * p.nvars)
        return cls(p.linear_coefficients())

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def content(self) -> int:
        g = 0
        for c in self.coefficients:
            g = gcd(g, c)
        return g

    def is_primitive(self) -> bool:
        return self.content() == 1

    def is_unit_form(self) -> bool:
        """All nonzero coefficients are +-1."""
        return not self.is_zero() and all(c in (-1, 0, 1) for c in self.coefficients)

    def to_polynomial(self) -> Polynomial:
        return Polynomial.linear(self.coefficients)

    def __neg__(self) -> "LinearForm":
        return LinearForm([-c for c in self.coefficients])

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm([a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinearForm):
            return self.coefficients == other.coefficients
        if isinstance(other, Polynomial):
            return self.to_polynomial() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __str__(self) -> str:
        return str(self.to_polynomial())

    def __repr__(self) -> str:
        return f"LinearForm({list(self.coefficients)})"


def _as_form(ell) -> LinearForm:
    if isinstance(ell, LinearForm):
        return ell
    if isinstance(ell, Polynomial):
        return LinearForm.from_polynomial(ell)
    return LinearForm(ell)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p * q


def divide_exact_linear(p: Polynomial, ell) -> Polynomial:
    """Return ``q`` with ``p == ell * q``; raise :class:`NotDivisible` otherwise.

    For forms with a unit coefficient the division eliminates that variable
    by integral long division.  Other primitive forms go through rational
    long division followed by an integrality check.
    """
    form = _as_form(ell)
    if form.nvars != p.nvars:
        raise ValueError("variable count mismatch")
    if form.is_zero():
        raise ZeroDivisionError("division by the zero linear form")
    if p.is_zero():
        return p
    coeffs = form.coefficients
    unit = next((i for i, c in enumerate(coeffs) if c in (1, -1)), None)
    if unit is not None:
        return _divide_unit(p, coeffs, unit)
    return _divide_rational(p, coeffs)


def _divide_unit(p: Polynomial, coeffs: tuple[int, ...], t: int) -> Polynomial:
    lead = coeffs[t]
    rest = [(i, c) for i, c in enumerate(coeffs) if c and i != t]
    rem = dict(p.terms)
    quot: dict[Exponent, int] = {}
    # peel off the highest power of x_t first; each step lowers it by one
    while True:
        top = max((e[t] for e in rem), default=0)
        if top == 0:
            break
        for exp in [e for e in rem if e[t] == top]:
            c = rem.pop(exp)
            qc = c * lead  # lead is +-1, so c / lead == c * lead
            qexp = exp[:t] + (exp[t] - 1,) + exp[t + 1:]
            quot[qexp] = quot.get(qexp, 0) + qc
            for i, ci in rest:
                e = list(qexp)
                e[i] += 1
                e = tuple(e)
                v = rem.get(e, 0) - ci * qc
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
    if rem:
        raise NotDivisible(f"{p} is not divisible by {Polynomial.linear(coeffs)}")
    return Polynomial._raw(p.nvars, {e: c for e, c in quot.items() if c})


def _divide_rational(p: Polynomial, coeffs: tuple[int, ...]) -> Polynomial:
    t = next(i for i, c in enumerate(coeffs) if c)
    lead = Fraction(coeffs[t])
    rest = [(i, c) for i, c in enumerate(coeffs) if c and i != t]
    rem: dict[Exponent, Fraction] = {e: Fraction(c) for e, c in p.terms.items()}
    quot: dict[Exponent, Fraction] = {}
    while True:
        top = max((e[t] for e in rem), default=0)
        if top == 0:
            break
        for exp in [e for e in rem if e[t] == top]:
            qc = rem.pop(exp) / lead
            qexp = exp[:t] + (exp[t] - 1,) + exp[t + 1:]
            quot[qexp] = quot.get(qexp, 0) + qc
            for i, ci in rest:
                e = list(qexp)
                e[i] += 1
                e = tuple(e)
                v = rem.get(e, 0) - ci * qc
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
    if rem:
        raise NotDivisible(f"{p} is not divisible by {Polynomial.linear(coeffs)}")
    if any(c.denominator != 1 for c in quot.values()):
        # cannot happen for primitive forms (Gauss's lemma)
        raise NotDivisible(f"quotient of {p} by {Polynomial.linear(coeffs)} is not integral")
    return Polynomial._raw(p.nvars, {e: int(c) for e, c in quot.items() if c})


def divides(p: Polynomial, ell) -> bool:
    try:
        divide_exact_linear(p, ell)
    except NotDivisible:
        return False
    return True


def elementary_symmetric(j: int, inputs: Sequence, one=None):
    """Sum over all ``j``-subsets of the product of the chosen inputs.

    Works for any commutative ring elements; ``one`` is the unit used for
    ``j == 0`` and defaults to the polynomial 1 when the inputs are polynomials.
    """
    if j < 0 or j > len(inputs):
        raise ValueError(f"elementary symmetric degree {j} out of range 0..{len(inputs)}")
    if one is None:
        if not inputs:
            raise ValueError("cannot infer the unit from an empty input list")
        one = Polynomial.one(inputs[0].nvars)
    # e_k(r_1..r_m) via the recurrence e_k <- e_k + r * e_{k-1}
    e = [one] + [one * 0] * j
    for r in inputs:
        for k in range(j, 0, -1):
            e[k] = e[k] + r * e[k - 1]
    return e[j]


def homogeneous_component(p: Polynomial, d: int) -> Polynomial:
    return Polynomial._raw(p.nvars, {e: c for e, c in p.terms.items() if sum(e) == d})


def monomials(nvars: int, d: int) -> list[Exponent]:
    """All exponent vectors of total degree ``d``, graded-lex descending."""
    if d < 0:
        return []
    out = []
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        exp = []
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(d + nvars - 2 - prev)
        out.append(tuple(exp))
    out.sort(reverse=True)
    return out


def product(factors: Iterable[Polynomial], nvars: int) -> Polynomial:
    result = Polynomial.one(nvars)
    for f in factors:
        result = result * f
    return result

