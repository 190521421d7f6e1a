"""Command-line front end.

Subcommands: surgery, zero-surgery, scan, circle-bundle, seifert,
whitehead, splice, classify, catalog, crosscheck.  Output is an aligned
text table by default or a JSON document with --json.  Exit codes:
0 ok, 1 usage error, 2 computation precondition violated, 3 cross-check
mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import borromean, catalog, cone, crosscheck, formulas
from .knotcx import ModelError, chi_graded, parse_knot_spec, poly_str
from .linalg import LinearAlgebraError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_MISMATCH = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _parse_slope(text: str):
    """Parse a slope string 'p/q' or 'p'; returns (p, q) with q >= 1."""
    raw = text.strip()
    try:
        if "/" in raw:
            top, bottom = raw.split("/", 1)
            p, q = int(top), int(bottom)
        else:
            p, q = int(raw), 1
    except ValueError:
        raise cone.PreconditionError(f"slope {text!r} is not of the form p or p/q")
    if q < 0:
        p, q = -p, -q
    if q == 0:
        raise cone.PreconditionError(f"slope {text!r} has denominator zero")
    return p, q


def _load_knot(args):
    if getattr(args, "spec", None):
        with open(args.spec) as fh:
            return parse_knot_spec(json.load(fh))
    if getattr(args, "knot", None):
        return catalog.get_knot(args.knot)
    raise cone.PreconditionError("no knot given: use --knot NAME or --spec FILE")


def _load_profile(args) -> formulas.SutureDimProfile:
    if getattr(args, "profile", None):
        with open(args.profile) as fh:
            return formulas.parse_profile(json.load(fh))
    if args.companion_tau is None or args.companion_base is None:
        raise cone.PreconditionError(
            "no companion profile: use --profile FILE or --companion-tau/--companion-base")
    data = {"tau": args.companion_tau, "base_dim": args.companion_base}
    if getattr(args, "gamma0", None) is not None:
        data["gamma0"] = args.gamma0
    return formulas.parse_profile(data)


def _emit(args, payload: dict, table_rows: list, headers: list) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    rows = [[str(c) for c in row] for row in table_rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)))


def _pathway_values(K, p: int, q: int) -> dict:
    """Every applicable pathway's value for slope p/q, side by side."""
    from .knotcx import poly_norm
    values = {"cone": cone.build_cone_problem(K, p, q).dimension()}
    if q == 1 and p >= max(2 * K.genus - 1, 1):
        values["large-surgery"] = cone.surgery_dim(K, p, q, pathway="large-surgery").dimension
    delta = K.delta()
    if delta is not None:
        values["closed-form"] = formulas.thin_surgery_formula(poly_norm(delta), K.tau, p, q)
    if K.genus == 1 and q == 1 and p >= 1:
        values["ladder"] = cone.genus_one_positive_ladder(K, p)
    return values


def cmd_surgery(args) -> int:
    K = _load_knot(args)
    slopes = sorted({_parse_slope(s) for s in args.slope},
                    key=lambda pq: (Fraction(pq[0], pq[1]), pq[1]))
    if args.compare:
        rows = []
        records = []
        ok = True
        for p, q in slopes:
            if p == 0:
                raise cone.PreconditionError("slope 0 has no closed-form comparison; "
                                             "use the zero-surgery subcommand")
            values = _pathway_values(K, p, q)
            agree = len(set(values.values())) == 1
            ok = ok and agree
            records.append({"knot": K.name, "slope": f"{p}/{q}", "values": values,
                            "agree": agree})
            rows.append([K.name, f"{p}/{q}",
                         values["cone"],
                         values.get("closed-form", "-"),
                         values.get("large-surgery", "-"),
                         values.get("ladder", "-"),
                         agree])
        payload = {"command": "surgery", "compare": True, "results": records}
        _emit(args, payload, rows,
              ["knot", "slope", "cone", "closed-form", "large-surgery", "ladder", "agree"])
        return EXIT_OK if ok else EXIT_MISMATCH
    results = []
    for p, q in slopes:
        if p == 0:
            table = cone.zero_surgery_dims(K)
            results.append(cone.SurgeryResult(K.name, 0, 1, sum(d or 0 for d in table.values()),
                                              "cone", tuple(sorted(table.items()))))
        else:
            results.append(cone.surgery_dim(K, p, q))
    payload = {"command": "surgery", "results": [r.to_json_dict() for r in results]}
    rows = []
    for r in results:
        note = ""
        if r.per_grading is not None:
            note = " ".join(f"s={s}:{'undetermined (tau=0)' if d is None else d}"
                            for s, d in r.per_grading)
        rows.append([r.knot, r.slope, r.dimension, r.pathway, note])
    _emit(args, payload, rows, ["knot", "slope", "dim", "pathway", "per-grading"])
    return EXIT_OK


def cmd_zero_surgery(args) -> int:
    K = _load_knot(args)
    table = cone.zero_surgery_dims(K)
    payload = {"command": "zero-surgery", "knot": K.name,
               "per_grading": {str(s): d for s, d in sorted(table.items())}}
    rows = [[K.name, s, "undetermined (tau=0)" if d is None else d]
            for s, d in sorted(table.items())]
    _emit(args, payload, rows, ["knot", "grading", "dim"])
    return EXIT_OK


def cmd_scan(args) -> int:
    K = _load_knot(args)
    res = cone.almost_lspace_scan(K)
    payload = {"command": "scan", "knot": K.name, **res.to_json_dict()}
    witness = "-" if res.witness is None else res.witness
    dims = " ".join(f"{n}:{d}" for n, d in res.dims)
    _emit(args, payload, [[K.name, res.verdict, witness, dims]],
          ["knot", "verdict", "witness", "dims"])
    return EXIT_OK


def cmd_circle_bundle(args) -> int:
    a = borromean.circle_bundle_dim_module(args.genus, args.euler)
    b = borromean.circle_bundle_dim_formula(args.genus, args.euler)
    payload = {"command": "circle-bundle", "genus": args.genus, "euler": args.euler,
               "dim_module": a, "dim_formula": b, "agree": a == b}
    _emit(args, payload, [[args.genus, args.euler, a, b, a == b]],
          ["genus", "euler", "dim-module", "dim-formula", "agree"])
    return EXIT_OK if a == b else EXIT_MISMATCH


def cmd_seifert(args) -> int:
    pairs = [_parse_slope(p) for p in args.pair or []]
    pairs = [(p, q) for p, q in pairs]
    deg = Fraction(args.base) + sum(Fraction(r, v) for r, v in pairs)
    dim = borromean.seifert_dim(args.genus, args.base, pairs)
    large = borromean.seifert_dim_large(args.genus, args.base, pairs)
    pathway = "large-surgery" if large is not None else "cone"
    payload = {"command": "seifert", "genus": args.genus, "base": args.base,
               "pairs": [[r, v] for r, v in pairs], "degree": str(deg),
               "dim": dim, "pathway": pathway}
    _emit(args, payload,
          [[args.genus, args.base, " ".join(f"{r}/{v}" for r, v in pairs) or "-",
            str(deg), dim, pathway]],
          ["genus", "base", "pairs", "degree", "dim", "pathway"])
    return EXIT_OK


def cmd_whitehead(args) -> int:
    prof = _load_profile(args)
    spec = formulas.WhDoubleSpec(args.twists, prof)
    if args.clasp == "neg":
        res = formulas.whitehead_double_negative_clasp(spec)
    else:
        res = formulas.whitehead_double_pm1(spec)
    payload = {"command": "whitehead", "twists": args.twists, "clasp": args.clasp,
               "companion": {"tau": prof.tau, "base_dim": prof.base_dim},
               **res.to_json_dict()}
    _emit(args, payload,
          [[args.twists, args.clasp, res.dim_plus_one, res.dim_minus_one,
            res.tau, res.top_grading_dim]],
          ["twists", "clasp", "dim(+1)", "dim(-1)", "tau", "top-dim"])
    return EXIT_OK


def cmd_splice(args) -> int:
    prof = _load_profile(args)
    dim = formulas.splice_dim(args.n, prof, gamma0=args.gamma0)
    payload = {"command": "splice", "n": args.n,
               "companion": {"tau": prof.tau, "base_dim": prof.base_dim},
               "dim": dim}
    _emit(args, payload, [[args.n, prof.tau, prof.gamma0, dim]],
          ["n", "companion-tau", "gamma0", "dim"])
    return EXIT_OK


def cmd_classify(args) -> int:
    delta = json.loads(args.delta)
    candidates = formulas.nearly_fibered_classify(args.dim, delta)
    payload = {"command": "classify", "dim": args.dim, "delta": delta,
               "candidates": list(candidates)}
    _emit(args, payload, [[args.dim, c] for c in candidates], ["dim", "candidate"])
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = []
    entries = []
    for name in catalog.knot_names():
        K = catalog.get_knot(name)
        delta = poly_str(chi_graded(K))
        entries.append({"name": name, "alexander": delta, "tau": K.tau,
                        "genus": K.genus, "dim": K.dim})
        rows.append([name, delta, K.tau, K.genus, K.dim])
    payload = {"command": "catalog", "knots": entries}
    _emit(args, payload, rows, ["name", "alexander", "tau", "genus", "dim"])
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    names = None if args.all or not args.suite else args.suite
    results = crosscheck.run_suites(names)
    payload = {"command": "crosscheck",
               "suites": [r.to_json_dict() for r in results],
               "ok": all(r.ok for r in results)}
    rows = [[r.name, r.cases, "ok" if r.ok else f"{len(r.mismatches)} mismatches"]
            for r in results]
    _emit(args, payload, rows, ["suite", "cases", "status"])
    if not args.json:
        for r in results:
            for m in r.mismatches:
                print(f"MISMATCH [{r.name}]: {m}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


def build_parser() -> _Parser:
    parser = _Parser(prog="knotsurgery",
                     description="surgery-invariant dimensions on knot models")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_knot_args(p):
        p.add_argument("--knot", help="catalog knot name")
        p.add_argument("--spec", help="path to a knot-spec JSON file")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("surgery", help="dimension at one or more slopes")
    add_knot_args(p)
    p.add_argument("--slope", action="append", required=True,
                   help="slope p/q (repeatable); 0 routes to the zero-surgery table")
    p.add_argument("--compare", action="store_true",
                   help="show every applicable pathway's value side by side")
    p.set_defaults(func=cmd_surgery)

    p = sub.add_parser("zero-surgery", help="per-grading zero-surgery table")
    add_knot_args(p)
    p.set_defaults(func=cmd_zero_surgery)

    p = sub.add_parser("scan", help="minimal-dimension classification scan")
    add_knot_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("circle-bundle", help="circle bundle over a surface")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--euler", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_circle_bundle)

    p = sub.add_parser("seifert", help="Seifert fibered space (nonzero degree)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--base", type=int, required=True, help="integer invariant m")
    p.add_argument("--pair", action="append", help="exceptional fiber r/v (repeatable)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_seifert)

    p = sub.add_parser("whitehead", help="twisted double dimensions at slopes +1/-1")
    p.add_argument("--twists", type=int, required=True)
    p.add_argument("--clasp", choices=("pos", "neg"), default="pos")
    p.add_argument("--profile", help="companion-profile JSON file")
    p.add_argument("--companion-tau", type=int)
    p.add_argument("--companion-base", type=int)
    p.add_argument("--gamma0", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_whitehead)

    p = sub.add_parser("splice", help="splice with a twist-knot complement")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--profile", help="companion-profile JSON file")
    p.add_argument("--companion-tau", type=int)
    p.add_argument("--companion-base", type=int)
    p.add_argument("--gamma0", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_splice)

    p = sub.add_parser("classify", help="genus-one nearly-fibered candidates")
    p.add_argument("--dim", type=int, required=True, help="total knot-homology dimension")
    p.add_argument("--delta", required=True,
                   help="Alexander polynomial as JSON [[coef, power], ...]")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", help="list built-in knots")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("crosscheck", help="run pathway agreement suites")
    p.add_argument("--all", action="store_true", help="run every suite")
    p.add_argument("--suite", action="append",
                   help=f"suite name (repeatable); one of: {', '.join(crosscheck.ALL_SUITES)}")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_crosscheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (cone.PreconditionError, ModelError, LinearAlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
