"""Exhaustive checks over a quadric graph, collected into one report.

Each suite returns a :class:`SuiteResult` holding the number of cases run
and the failing cases (with a witness).  ``run_all`` drives every suite for a
given n and is what the ``verify`` command prints.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import canonical_reduction as cr
from .graph_cohomology import (
    Cochain, GeneratorId, all_generators, is_class, iota, make_Delta, make_M, make_X,
    product_formula, star_sets, verify_relation1, verify_relation2,
    verify_relation3, verify_relation4,
)
from .polyring import Polynomial
from .quadric_graph import QuadricGraph, build, validate


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, witness: str) -> None:
        self.cases += 1
        if not passed:
            self.failures.append(witness)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        out = f"[{status}] {self.name}: {self.cases} cases"
        if self.failures:
            out += f", {len(self.failures)} failed; first: {self.failures[0]}"
        return out


def graph_suite(g: QuadricGraph) -> SuiteResult:
    rep = validate(g)
    res = SuiteResult("graph lemmas")
    res.cases = sum(rep.checks.values())
    res.failures = [f"{name} at {w}" for name, w in rep.failures]
    return res


def generator_suite(g: QuadricGraph) -> SuiteResult:
    res = SuiteResult("generators")
    n = g.n
    M = {v: make_M(g, v) for v in g.vertices}
    for v, c in M.items():
        ok, edge = is_class(c)
        res.record(ok, f"M_{v} fails the congruence on edge {edge}")
    for K in star_sets(g):
        ok, edge = is_class(make_Delta(g, K))
        res.record(ok, f"Delta_{sorted(K)} fails the congruence on edge {edge}")
    for i in range(1, n + 2):
        res.record(iota(g, g.x(i)) == M[i + 1] - M[1], f"x_{i} != M_{i + 1} - M_1")
    f = Cochain(g, [g.f_poly(v) for v in g.vertices])
    res.record(f == -M[n + 2], f"f != -M_{n + 2}")
    X = make_X(g)
    for v in g.vertices:
        res.record(M[v] + M[g.bar(v)] == X, f"M_{v} + M_{g.bar(v)} != X")
    return res


def relation1_suite(g: QuadricGraph, max_size: int = 3) -> SuiteResult:
    """Every family of at most ``max_size`` distinct generators with empty common J."""
    res = SuiteResult(f"relation 1 (families of size <= {max_size})")
    gens = all_generators(g)
    cache: dict = {}
    Js = {gen: gen.J(g) for gen in gens}
    for size in range(2, max_size + 1):
        for fam in itertools.combinations(gens, size):
            common = frozenset.intersection(*(Js[x] for x in fam))
            if common:
                continue
            out = verify_relation1(g, fam, cache)
            res.record(out.holds, " * ".join(map(str, fam)) + " != 0")
    return res


def relation2_suite(g: QuadricGraph) -> SuiteResult:
    res = SuiteResult("relation 2")
    for v, w in itertools.combinations(g.vertices, 2):
        chk = verify_relation2(g, v, w)
        res.record(chk.equal, chk.label)
    return res


def relation3_suite(g: QuadricGraph) -> SuiteResult:
    res = SuiteResult("relation 3")
    for I in star_sets(g, g.n):
        chk = verify_relation3(g, I)
        res.record(chk.equal, chk.label)
    return res


def relation4_suite(g: QuadricGraph) -> SuiteResult:
    res = SuiteResult("relation 4")
    for K in star_sets(g):
        if len(K) < 2:
            continue
        for i in sorted(K):
            chk = verify_relation4(g, K, i)
            res.record(chk.equal, chk.label)
    return res


def product_suite(g: QuadricGraph) -> SuiteResult:
    res = SuiteResult("product formula")
    tops = star_sets(g, g.n + 1)
    for K, H in itertools.product(tops, repeat=2):
        chk = product_formula(g, K, H)
        res.record(chk.equal, chk.label)
    return res


def relation_defects(g: QuadricGraph) -> list[tuple[str, Cochain]]:
    """``lhs - rhs`` for every relation instance; each must be the zero class."""
    out = []
    gens = all_generators(g)
    cache: dict = {}
    for a, b in itertools.combinations(gens, 2):
        r = verify_relation1(g, (a, b), cache)
        if r.applicable:
            out.append((f"{a} * {b}", r.product))
    for v, w in itertools.combinations(g.vertices, 2):
        c = verify_relation2(g, v, w)
        out.append((c.label, c.lhs - c.rhs))
    for I in star_sets(g, g.n):
        c = verify_relation3(g, I)
        out.append((c.label, c.lhs - c.rhs))
    for K in star_sets(g):
        if len(K) >= 2:
            for i in sorted(K):
                c = verify_relation4(g, K, i)
                out.append((c.label, c.lhs - c.rhs))
    return out


def defect_suite(g: QuadricGraph) -> SuiteResult:
    res = SuiteResult("relation defects reduce to zero")
    for label, defect in relation_defects(g):
        res.record(cr.reduce(defect).is_zero(), label)
    return res


def random_word(g: QuadricGraph, rng: random.Random, max_degree: int = 12) -> Cochain:
    """A random sum of generator products (with constant coefficients) of
    cohomological degree at most ``max_degree``."""
    gens = all_generators(g)
    total = Cochain.zero(g)
    for _ in range(rng.randint(1, 3)):
        budget = rng.randint(0, max_degree // 2)
        word = iota(g, Polynomial.constant(g.nvars, rng.choice([-3, -2, -1, 1, 2, 3])))
        used = 0
        while used < budget:
            choices = [x for x in gens if _poly_degree(g, x) <= budget - used]
            if not choices:
                break
            gen = rng.choice(choices)
            word = word * gen.cochain(g)
            used += _poly_degree(g, gen)
        for _ in range(budget - used):
            word = word * iota(g, g.x(rng.randint(1, g.nvars)))
        total = total + word
    return total


def _poly_degree(g: QuadricGraph, gen: GeneratorId) -> int:
    if gen.kind == "M":
        return 1
    return 2 * g.n + 1 - len(gen.members)


def roundtrip_suite(g: QuadricGraph, count: int = 200, seed: int = 0, max_degree: int = 12) -> SuiteResult:
    res = SuiteResult(f"evaluate(reduce(h)) = h on {count} random words")
    rng = random.Random(seed)
    for k in range(count):
        h = random_word(g, rng, max_degree)
        cf = cr.reduce(h)
        res.record(cr.evaluate(cf) == h and cr.is_zero(h) == h.is_zero(), f"word #{k}")
    return res


def localization_suite(n: int) -> SuiteResult:
    res = SuiteResult("unimodular localization")
    for v in range(1, 2 * n + 3):
        det = cr.localization_determinant(n, v)
        res.record(abs(det) == 1, f"det = {det} at vertex {v}")
    return res


SUITES: dict[str, Callable[[QuadricGraph], SuiteResult]] = {
    "graph": graph_suite,
    "generators": generator_suite,
    "relation1": relation1_suite,
    "relation2": relation2_suite,
    "relation3": relation3_suite,
    "relation4": relation4_suite,
    "product": product_suite,
}


def run_all(g: QuadricGraph, seed: int = 0, roundtrips: int = 200) -> list[SuiteResult]:
    """All structural suites on ``g``; the reduction suites only on the genuine graph."""
    results = [fn(g) for fn in SUITES.values()]
    if all(r.ok for r in results[:1]) and g.to_json() == build(g.n).to_json():
        results.append(defect_suite(g))
        results.append(roundtrip_suite(g, roundtrips, seed))
        results.append(localization_suite(g.n))
    return results
