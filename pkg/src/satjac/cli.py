"""Command-line front end.

Exit codes: 0 success, 2 input or parse error, 3 resource budget exceeded
(or reseeding exhausted), 4 hypothesis violation. With ``--json`` errors
are printed to stdout as ``{"error": {...}}``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import alexander as alx
from . import constructions as cons
from .errors import (BudgetExceeded, GenericityError, HypothesisViolation, InputError,
                     PolySyntaxError)
from .groebner import UNBOUNDED, Budget, use_budget
from .hilbert import defect_profile, hilbert_function
from .ideals import Ideal, krull_dimension, saturation_irrelevant
from .polyring import RingContext, parse_poly

DEFAULT_MAX_SPAIRS = 500_000
DEFAULT_MAX_DEGREE = 200


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _read_poly_text(args) -> str:
    if args.poly is not None and args.file is not None:
        raise InputError("give either --poly or --file, not both")
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from exc
    if args.poly is None:
        raise InputError("missing polynomial: use --poly or --file")
    return args.poly


def _ring(n: int) -> RingContext:
    if n < 1:
        raise InputError("--n must be at least 1")
    return RingContext.projective(n)


def cmd_analyze(args, out):
    f = parse_poly(_read_poly_text(args), _ring(args.n))
    report = alx.analyze(f, assert_irreducible=args.assert_irreducible)
    if args.json:
        out.write(_dump(report.to_dict()) + "\n")
    else:
        out.write(alx.render_report(report))


def cmd_hilbert(args, out):
    ring = _ring(args.n)
    gens = [parse_poly(t, ring) for t in args.gens]
    ideal = Ideal(gens, ring)
    if args.saturate:
        ideal = saturation_irrelevant(ideal)
    values = [{"e": e, "h": hilbert_function(ideal, e)} for e in range(args.max_degree + 1)]
    result = {"spec_version": alx.SPEC_VERSION, "krull_dimension": krull_dimension(ideal),
              "hilbert": values, "saturated": args.saturate}
    if result["krull_dimension"] == 1 and args.saturate:
        prof = defect_profile(ideal, args.max_degree)
        result["xi"] = prof.xi
        result["defect_profile"] = prof.rows()
    if args.json:
        out.write(_dump(result) + "\n")
        return
    out.write(f"krull dimension: {result['krull_dimension']}\n")
    if "xi" in result:
        out.write(f"xi: {result['xi']}\n")
        for r in result["defect_profile"]:
            out.write(f"{r['e']:>4} {r['h']:>6} {r['defect']:>6}\n")
    else:
        for r in values:
            out.write(f"{r['e']:>4} {r['h']:>6}\n")


def cmd_alpha(args, out):
    a = alx.alpha(args.n, args.d, args.k)
    if args.json:
        out.write(_dump({"spec_version": alx.SPEC_VERSION, "n": args.n, "d": args.d,
                         "k": args.k, "alpha": str(a)}) + "\n")
    else:
        out.write(f"{a}\n")


def cmd_classify(args, out):
    v = alx.classify_triple(args.n, args.d, args.k)
    if args.json:
        out.write(_dump({"spec_version": alx.SPEC_VERSION, **v.to_dict()}) + "\n")
    else:
        out.write(v.label() + "\n")


def cmd_sweep(args, out):
    verdicts = alx.sweep_triples(args.n_max, args.d_max)
    failing = alx.failing_set(verdicts)
    if args.json:
        data = {"spec_version": alx.SPEC_VERSION, "n_max": args.n_max, "d_max": args.d_max,
                "failing_set": [list(t) for t in failing]}
        if not args.failing_only:
            data["verdicts"] = [v.to_dict() for v in verdicts]
        out.write(_dump(data) + "\n")
        return
    if not args.failing_only:
        for v in verdicts:
            out.write(f"n={v.n} d={v.d} k={v.k} alpha={v.alpha}: {v.label()}\n")
    out.write("failing set:\n")
    for n, d, k in failing:
        out.write(f"  ({n}, {d}, {k}) exceptional case {alx.exceptional_case(n, d, k)}\n")


def _construct_args(args):
    fam = args.family
    if fam in ("composite", "deformed"):
        w = cons.WeightedHomogData.parse(args.f, args.weights.split(","))
        if fam == "composite":
            return (w, args.m)
        return (w, args.m1, args.m2)
    if fam == "cusps":
        return (args.m, args.a1, args.b1)
    return (args.ell, args.r, args.m)


def cmd_construct(args, out):
    params = _construct_args(args)
    if args.verify:
        F, report, result = cons.construct_verified(args.family, *params, seed=args.seed,
                                                    retries=args.retries)
    else:
        F, report = cons._BUILDERS[args.family](*params, seed=args.seed)
        result = None
    if args.json:
        data = {"spec_version": alx.SPEC_VERSION, "polynomial": report.polynomial,
                "report": report.to_dict()}
        if result is not None:
            data["verification"] = result.to_dict()
        out.write(_dump(data) + "\n")
        return
    out.write(report.polynomial + "\n")
    for key, val in report.to_dict().items():
        if key in ("polynomial", "components", "point_ideal"):
            continue
        out.write(f"{key}: {val}\n")
    if result is not None:
        out.write(f"verification: {result.status}\n")
        for c in result.checks:
            out.write(f"  [{'ok' if c.ok else 'FAIL'}] {c.name}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=cons.DEFAULT_SEED,
                   help=f"64-bit seed for random forms (default {cons.DEFAULT_SEED})")
    p.add_argument("--max-spairs", type=int, default=DEFAULT_MAX_SPAIRS,
                   help="cap on S-pairs per Groebner basis")
    p.add_argument("--max-degree-budget", type=int, default=DEFAULT_MAX_DEGREE,
                   help="cap on the degree of intermediate polynomials")
    p.add_argument("--unbounded", action="store_true", help="remove all resource caps")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="satjac",
        description="Defects of saturated Jacobian ideals and Alexander-root exclusions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="analyze a hypersurface in P^n")
    p.add_argument("--n", type=int, required=True, help="projective dimension")
    p.add_argument("--poly", help="homogeneous polynomial in x0..xn")
    p.add_argument("--file", help="file holding one polynomial")
    p.add_argument("--assert-irreducible", action="store_true",
                   help="assert that the hypersurface is irreducible")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function of R/I")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gens", nargs="+", required=True, help="generators of I")
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--saturate", action="store_true", help="saturate I first")
    p.set_defaults(func=cmd_hilbert)

    for name, func in (("alpha", cmd_alpha), ("classify", cmd_classify)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("sweep", parents=[common], help="classify all triples in a range")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--failing-only", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("construct", parents=[common], help="build an example hypersurface")
    p.add_argument("family", choices=sorted(cons._BUILDERS))
    p.add_argument("--f", default="x0^2 + x1^3", help="weighted homogeneous f in x0..x(n-1)")
    p.add_argument("--weights", default="1/2,1/3", help="comma-separated weights of f")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--m1", type=int, default=1)
    p.add_argument("--m2", type=int, default=0)
    p.add_argument("--a1", type=int, default=0)
    p.add_argument("--b1", type=int, default=0)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--verify", action="store_true", help="replay predictions through the analyzer")
    p.add_argument("--retries", type=int, default=3)
    p.set_defaults(func=cmd_construct)
    return parser


def _error(exc: Exception, code: int, as_json: bool, out, err) -> int:
    if as_json:
        payload = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
        if isinstance(exc, PolySyntaxError) and exc.position is not None:
            payload["position"] = exc.position
        out.write(_dump({"spec_version": alx.SPEC_VERSION, "error": payload}) + "\n")
    else:
        err.write(f"error: {exc}\n")
    return code


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.unbounded:
        budget = UNBOUNDED
    else:
        if args.max_spairs <= 0 or args.max_degree_budget <= 0:
            return _error(InputError("budgets must be positive"), 2, args.json, out, err)
        budget = Budget(args.max_spairs, args.max_degree_budget)
    try:
        with use_budget(budget):
            args.func(args, out)
    except HypothesisViolation as exc:
        return _error(exc, 4, args.json, out, err)
    except InputError as exc:
        return _error(exc, 2, args.json, out, err)
    except (BudgetExceeded, GenericityError) as exc:
        return _error(exc, 3, args.json, out, err)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
