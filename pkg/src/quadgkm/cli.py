"""Command line: ``quadgkm {graph,verify,reduce,hilbert,ordinary,product} --n N ...``

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import canonical_reduction as cr
from . import lattice_oracle, ordinary_cohomology, verification
from .graph_cohomology import Cochain, PreconditionError, is_class, product_formula
from .quadric_graph import build, validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def nonnegative_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {v}")
    return v


def vertex_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _graph(args):
    g = build(args.n)
    if args.flip_sign:
        i, j = args.flip_sign
        if not g.is_edge(i, j):
            raise UsageError(f"({i}, {j}) is not an edge")
        g = g.with_flipped_sign(i, j)
    return g


# -- commands ------------------------------------------------------------------

def cmd_graph(args) -> int:
    g = _graph(args)
    rep = validate(g)
    if args.format == "dot":
        text = g.to_dot()
    elif args.format == "json":
        text = _dump({**g.to_json(), "valid": rep.ok})
    else:
        lines = [f"Q_{2 * g.n}: {len(g.vertices)} vertices, {len(g.edges)} edges"]
        lines += [f"  f({v}) = {g.f[v]}" for v in g.vertices]
        lines += [f"  alpha({i},{j}) = {g.alpha(i, j)}" for i, j in g.edges]
        lines.append(rep.summary())
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if not rep.ok:
        print(rep.summary(), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _graph(args)
    results = verification.run_all(g, seed=args.seed, roundtrips=args.roundtrips)
    ok = all(r.ok for r in results)
    if args.format == "json":
        text = _dump({"n": g.n, "ok": ok, "suites": [
            {"name": r.name, "cases": r.cases, "ok": r.ok, "failures": r.failures[:20]}
            for r in results]})
    else:
        text = "\n".join(r.line() for r in results)
        text += f"\n{'all suites passed' if ok else 'VERIFICATION FAILED'}\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reduce(args) -> int:
    g = build(args.n)
    try:
        with open(args.cochain) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read cochain file: {exc}") from None
    if "n" in data and int(data["n"]) != args.n:
        raise UsageError(f"file is for n={data['n']}, not n={args.n}")
    try:
        h = Cochain.from_json(g, data)
    except ValueError as exc:
        raise UsageError(f"bad cochain: {exc}") from None
    try:
        cf = cr.reduce(h)
    except cr.NotAClass as exc:
        _, edge = is_class(h)
        print(f"not a class: congruence fails on edge {edge} "
              f"(alpha = {g.alpha(*edge)}); {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "text":
        _emit(cf.pretty() + "\n", args.out)
    else:
        _emit(_dump(cf.to_json()), args.out)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    max_d = args.max_d if args.max_d is not None else 2 * args.n + 2
    rows = lattice_oracle.rank_table(args.n, max_d)
    ok = all(r["rank"] == r["expected"] and not r["torsion"] for r in rows)
    if args.format == "json":
        text = _dump({"n": args.n, "ok": ok, "ranks": rows})
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "degree", "rank", "expected", "torsion"])
        for r in rows:
            w.writerow([r["d"], r["degree"], r["rank"], r["expected"], " ".join(map(str, r["torsion"]))])
        text = buf.getvalue()
    else:
        lines = [f"{'d':>3} {'deg':>4} {'rank':>6} {'expected':>8}"]
        lines += [f"{r['d']:>3} {r['degree']:>4} {r['rank']:>6} {r['expected']:>8}" for r in rows]
        text = "\n".join(lines) + f"\n{'ranks match' if ok else 'MISMATCH'}\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ordinary(args) -> int:
    n = args.n
    table = ordinary_cohomology.betti_table(n)
    betti = [o.quotient_rank for o in table]
    torsion = [o.torsion for o in table]
    lai = ordinary_cohomology.lai_presentation_check(n)
    parity = ordinary_cohomology.parity_check(n)
    rewrite = {tuple(sorted(K)): ordinary_cohomology.rewrite_certificate(n, K)
               for K in ordinary_cohomology.top_sets(n)}
    ok = (betti == ordinary_cohomology.expected_betti(n) and not any(torsion)
          and lai.ok and parity.ok and all(c for _, c in rewrite.values()))
    verdict = "x^2 = c^n x (x^2 != 0)" if n % 2 == 0 else "x^2 = 0"
    if args.format == "json":
        text = _dump({
            "n": n, "ok": ok, "betti": betti, "torsion": torsion,
            "lai": {"K": list(lai.K), "relations": lai.relations,
                    "non_vanishing": lai.non_vanishing,
                    "basis": {str(d): v for d, v in lai.basis_certified.items()}},
            "parity": {"verdict": verdict, "ok": parity.ok},
            "rewrite": {",".join(map(str, K)): {"to": sorted(H), "certified": c}
                        for K, (H, c) in rewrite.items()},
        })
    else:
        lines = [f"H*(Q_{2 * n}) modulo J", f"Betti: {tuple(betti)}",
                 f"torsion: {'none' if not any(torsion) else torsion}",
                 f"Lai relations with c = M_1, x = Delta_{{{','.join(map(str, lai.K))}}}:"]
        lines += [f"  {name} = 0 mod J: {v}" for name, v in lai.relations.items()]
        lines += [f"  {name} != 0 mod J: {v}" for name, v in lai.non_vanishing.items()]
        lines.append(f"  monomial basis certified in every degree: {all(lai.basis_certified.values())}")
        lines.append(f"parity verdict: {verdict} ({'certified' if parity.ok else 'FAILED'})")
        lines.append(f"Delta rewriting certified for all {len(rewrite)} sets: "
                     f"{all(c for _, c in rewrite.values())}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_product(args) -> int:
    if args.K is None or args.H is None:
        raise UsageError("product needs --K and --H")
    g = build(args.n)
    try:
        chk = product_formula(g, args.K, args.H)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        text = _dump({"n": args.n, "K": sorted(args.K), "H": sorted(args.H),
                      "equal": chk.equal, "formula": chk.label})
    else:
        text = f"{chk.label}\nequal: {str(chk.equal).lower()}\n"
    _emit(text, args.out)
    return EXIT_OK if chk.equal else EXIT_FAIL


COMMANDS = {
    "graph": cmd_graph, "verify": cmd_verify, "reduce": cmd_reduce,
    "hilbert": cmd_hilbert, "ordinary": cmd_ordinary, "product": cmd_product,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadgkm", description="GKM graph computations for Q_{2n}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "text"), default="text"):
        sp.add_argument("--n", type=positive_int, required=True)
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write to this file instead of stdout")
        return sp

    gp = common(sub.add_parser("graph", help="build and validate the graph"),
                ("json", "dot", "text"), "json")
    gp.add_argument("--flip-sign", type=vertex_list, metavar="I,J",
                    help="negate one edge label (fault injection)")
    vp = common(sub.add_parser("verify", help="run the exhaustive suites"))
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--roundtrips", type=nonnegative_int, default=200)
    vp.add_argument("--flip-sign", type=vertex_list, metavar="I,J",
                    help="negate one edge label (fault injection)")
    rp = common(sub.add_parser("reduce", help="normal form of a cochain read from JSON"), default="json")
    rp.add_argument("cochain", help="JSON file {\"n\": N, \"values\": {\"1\": \"x1\", ...}}")
    hp = common(sub.add_parser("hilbert", help="oracle ranks against the expected ranks"),
                ("json", "text", "csv"))
    hp.add_argument("--max-d", type=nonnegative_int)
    common(sub.add_parser("ordinary", help="quotient by J, Lai relations, parity"))
    pp = common(sub.add_parser("product", help="check the product formula for one pair"))
    pp.add_argument("--K", type=vertex_list)
    pp.add_argument("--H", type=vertex_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "flip_sign", None) is not None and len(args.flip_sign) != 2:
        parser.error("--flip-sign takes exactly two vertices")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
