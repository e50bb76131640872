"""Command-line front end.

    kradical analyze "z^4*(z^2+6*z+25)" --k 5
    kradical verify-fixtures --only deg15 --t 75/4
    kradical group-info "PGL(4,2)"

Exit codes: 0 success, 1 fixture failure, 2 parse error, 3 precision
exhausted, 4 unrecognized monodromy group.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
import warnings
from fractions import Fraction

from . import __version__
from .classifier import SPECIAL_GROUPS, KCertificate, decide_k, table_row
from .errors import NumericOnlyWarning, ParseError, PrecisionInsufficient, UnrecognizedGroup
from .families import DEG15_RUNS, all_fixture_runs, verify_fixture
from .parsing import parse_poly

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_PRECISION = 3
EXIT_UNRECOGNIZED = 4


def report_dict(expr: str, cert: KCertificate, k: int | None = None) -> dict:
    factors = []
    for f in cert.factors:
        group = None
        if f.group is not None:
            group = {"name": f.group.name, "order": f.group.order, "primitive": f.group.primitive}
        factors.append({
            "degree": f.degree,
            "coeffs": f.coeff_strings(),
            "passport": f.passport.text if f.passport is not None else [],
            "group": group,
            "k_factor": f.k_factor,
        })
    out = {
        "version": SCHEMA_VERSION,
        "input": expr,
        "precision_bits": cert.precision,
        "factors": factors,
        "overall_k": cert.overall_k,
    }
    if k is not None:
        out["answer_for_k"] = cert.overall_k <= k
    return out


def _print_human(rep: dict, elapsed: float, out) -> None:
    print(f"input: {rep['input']}", file=out)
    degrees = " o ".join(str(f["degree"]) for f in rep["factors"])
    print(f"decomposition (outermost first): {degrees}", file=out)
    for i, f in enumerate(rep["factors"]):
        if f["group"] is None:
            print(f"  factor {i}: degree {f['degree']} (linear), k = 1", file=out)
            continue
        g = f["group"]
        prim = "primitive" if g["primitive"] else "imprimitive"
        print(
            f"  factor {i}: degree {f['degree']}, passport [{', '.join(f['passport'])}], "
            f"group {g['name']} of order {g['order']} ({prim}), k = {f['k_factor']}",
            file=out,
        )
    print(f"overall k: {rep['overall_k']}", file=out)
    if "answer_for_k" in rep:
        print(f"invertible in k-radicals for the given k: {'yes' if rep['answer_for_k'] else 'no'}", file=out)
    print(f"precision: {rep['precision_bits']} bits, time: {elapsed:.2f} s", file=out)


def cmd_analyze(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NumericOnlyWarning)
            p = parse_poly(args.expr, args.precision)
        for w in caught:
            print(f"warning: {w.message}", file=err)
    except ParseError as e:
        print(f"parse error: {e}", file=err)
        return EXIT_PARSE
    start = time.perf_counter()
    try:
        cert = decide_k(p, precision=args.precision, max_precision=max(args.max_precision, args.precision), seed=args.seed)
    except PrecisionInsufficient as e:
        print(f"precision exhausted: {e}", file=err)
        return EXIT_PRECISION
    except UnrecognizedGroup as e:
        print(f"unrecognized monodromy group: {e}", file=err)
        print(json.dumps(e.evidence, indent=2, sort_keys=True), file=err)
        return EXIT_UNRECOGNIZED
    elapsed = time.perf_counter() - start
    rep = report_dict(args.expr, cert, args.k)
    if args.json:
        print(json.dumps(rep, indent=2, ensure_ascii=False), file=out)
    else:
        _print_human(rep, elapsed, out)
    return EXIT_OK


def cmd_verify_fixtures(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    runs = all_fixture_runs()
    if args.only:
        runs = [r for r in runs if r[0] == args.only]
        if not runs:
            print(f"unknown fixture id {args.only!r}", file=err)
            return EXIT_FAIL
    if args.t is not None:
        t = Fraction(args.t)
        if args.only not in (None, "deg15"):
            print("--t only applies to deg15", file=err)
            return EXIT_FAIL
        runs = [r for r in runs if r[0] != "deg15"] + [("deg15", t, root) for root in (1, -1)]
    failures = 0
    for fid, t, root in runs:
        start = time.perf_counter()
        rep = verify_fixture(fid, t, root, precision=args.precision)
        elapsed = time.perf_counter() - start
        status = "PASS" if rep.passed else "FAIL"
        detail = ""
        if rep.certificate is not None:
            f = rep.certificate.factors[0]
            if f.passport is not None:
                detail = f" passport {f.passport} order {f.group.order} k {rep.certificate.overall_k}"
        print(f"{status} {rep.fixture.label}{detail} ({elapsed:.1f} s)", file=out)
        if not rep.passed:
            failures += 1
            print(f"  first divergence: {rep.first_failure}", file=out)
    print(f"{len(runs) - failures}/{len(runs)} fixtures passed", file=out)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _group_row(name: str):
    key = name.strip()
    row = table_row(key)
    if row is not None:
        case = "exceptional: minimal k below the degree" if row.min_k < row.degree else "minimal k equals the degree"
        return row.name, row.degree, row.order, row.min_k, case
    if key[:1] in "SACD" and key[1:].isdigit():
        n = int(key[1:])
        if key[0] == "S":
            k = 1 if n <= 4 else n
            return key, n, math.factorial(n), k, "solvable" if n <= 4 else "minimal k equals the degree"
        if key[0] == "A" and n >= 5:
            return key, n, math.factorial(n) // 2, n, "minimal k equals the degree"
        if key[0] in "CD" and n >= 2:
            return key, n, n if key[0] == "C" else 2 * n, 1, "solvable"
    return None


def cmd_group_info(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    row = _group_row(args.name)
    if row is None:
        known = ", ".join(r.name for r in SPECIAL_GROUPS.values())
        print(f"unknown group {args.name!r}; known: Sn, An, Cp, Dp, {known}", file=err)
        return EXIT_UNRECOGNIZED
    name, degree, order, k, case = row
    print(f"name: {name}", file=out)
    print(f"degree: {degree}", file=out)
    print(f"order: {order}", file=out)
    print(f"minimal k: {k}", file=out)
    print(f"case: {case}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kradical", description="Minimal k for inverting a polynomial in k-radicals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="decompose a polynomial and compute its minimal k")
    a.add_argument("expr", help='polynomial in z, e.g. "z^4*(z^2+6*z+25)"')
    a.add_argument("--k", type=int, help="also answer whether the inverse is expressible in k-radicals")
    a.add_argument("--precision", type=int, default=256, help="starting working precision in bits (default 256)")
    a.add_argument("--max-precision", type=int, default=4096, help="give up beyond this precision (default 4096)")
    a.add_argument("--json", action="store_true", help="machine-readable report")
    a.add_argument("--seed", type=int, help="perturb the base point choice")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-fixtures", help="run the pipeline on the built-in exceptional polynomials")
    v.add_argument("--only", help="restrict to one fixture id (deg6, deg10, deg8-plus, deg8-minus, deg15)")
    v.add_argument("--t", help="parameter for the deg15 family, e.g. 75/4")
    v.add_argument("--precision", type=int, default=256)
    v.set_defaults(func=cmd_verify_fixtures)

    g = sub.add_parser("group-info", help="degree, order and minimal k of a group from the classification")
    g.add_argument("name", help='e.g. "PGL(2,7)", "M23", "S5"')
    g.set_defaults(func=cmd_group_info)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
