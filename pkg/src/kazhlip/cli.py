"""Command-line frontend.

Exit codes: 0 success, 1 domain error, 2 parse/schema error, 3 hypothesis
flag (the numbers were computed but a hypothesis needed to interpret them
as certified bounds fails, e.g. a global fixed point exists).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, figures, limits, verify
from .errors import DomainError, HypothesisFlag, ResourceLimitError, SchemaError
from .groupact import GeneratorSet, Word, global_fixed_set
from .plmap import parse_rational
from .precision import get_precision, real_str, set_precision

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_HYPOTHESIS = 3


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc}", path) from exc


def _load_group(path: str) -> GeneratorSet:
    return GeneratorSet.from_json(_read_file(path))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_schedule(text: str):
    return [parse_rational(tok.strip(), "schedule") for tok in text.split(",") if tok.strip()]


def _parse_plist(text: str):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(float(tok))
        except ValueError as exc:
            raise SchemaError(f"invalid exponent {tok!r}", "p") from exc
    return out


def cmd_phi(args) -> int:
    _emit(real_str(bounds.phi(args.t)), args.out)
    return EXIT_OK


def cmd_phi_inv(args) -> int:
    _emit(real_str(bounds.phi_inv(args.t)), args.out)
    return EXIT_OK


def cmd_phi_table(args) -> int:
    start, end, step = (tok.strip() for tok in args.grid.split(":"))
    if args.which == "phi-branches":
        table = figures.phi_branch_table(start, end, step)
    else:
        table = figures.phi_inv_branch_table(start, end, step)
    if args.format == "svg":
        _emit(figures.render_svg(table), args.out)
    else:
        _emit(table.to_csv(), args.out)
    return EXIT_OK


def cmd_lip(args) -> int:
    S = _load_group(args.input)
    rows = [
        {
            "label": lab,
            "lip": str(g.lip_constant()),
            "displacement": str(g.displacement()),
        }
        for lab, g in S.generators
    ]
    payload = {
        "group_name": S.name,
        "per_generator": rows,
        "L": str(S.max_lip()),
        "M": str(S.max_displacement()),
    }
    if args.format == "json":
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = [f"group: {S.name}"]
        for row in rows:
            lines.append(
                f"  {row['label']}: Lip = {row['lip']}, displacement = {row['displacement']}"
            )
        lines.append(f"L = {payload['L']}, M = {payload['M']}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_fixed_points(args) -> int:
    S = _load_group(args.input)
    fixed = global_fixed_set(S)
    verdict = "empty" if fixed.is_empty else "nonempty"
    if args.format == "json":
        payload = {
            "group_name": S.name,
            "verdict": verdict,
            "fixed_set": str(fixed),
        }
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        _emit(f"global fixed set: {fixed}\nverdict: {verdict}", args.out)
    return EXIT_OK


def _run_bound(args):
    S = _load_group(args.input)
    p_list = _parse_plist(args.p) if args.p else None
    schedule = _parse_schedule(args.schedule) if args.schedule else None
    report = bounds.bound_report(S, p_list=p_list, n_schedule=schedule)
    return report


def cmd_bound(args) -> int:
    report = _run_bound(args)
    if args.format == "csv":
        _emit(report.to_csv(), args.out)
    elif args.format == "json":
        _emit(report.to_json(), args.out)
    else:
        lines = [
            f"group: {report.group_name}",
            f"L = {report.L}, M = {report.M}",
            f"hypothesis (no global fixed point): "
            f"{'ok' if report.hypothesis_ok else 'VIOLATED'}",
            f"analytic bound (L^2 window limit): {real_str(report.lemma41_bound)}",
            f"analytic bound (p -> oo limit):    {real_str(report.lemma43_bound)}",
            f"phi_inv(L):                        {real_str(report.phi_inv_of_L)}",
            f"headline kappa upper bound:        {real_str(report.headline)}",
        ]
        _emit("\n".join(lines), args.out)
    return EXIT_OK if report.hypothesis_ok else EXIT_HYPOTHESIS


def cmd_sweep(args) -> int:
    report = _run_bound(args)
    _emit(report.to_csv(), args.out)
    return EXIT_OK if report.hypothesis_ok else EXIT_HYPOTHESIS


def cmd_limit_diag(args) -> int:
    seq = limits.ActionSequence.from_json(_read_file(args.input))
    words = [Word.parse(tok) for tok in (args.words or "").split(",") if tok.strip()]
    if not words:
        words = [Word(((lab, 1),)) for lab in seq.labels]
    base = parse_rational(args.base, "base")
    diag = limits.limit_translation_diagnostic(seq, words, base, cauchy_tol=args.tol)
    if args.format == "csv":
        import csv as _csv
        import io as _io

        buf = _io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(["stage", "word", "value", "defect_vs_estimate"])
        est = dict(diag.estimates)
        for rec in diag.stages:
            for w, v in rec.word_values:
                writer.writerow(
                    [rec.index, w, float(v), float(abs(v - est[w]))]
                )
        _emit(buf.getvalue(), args.out)
    else:
        _emit(json.dumps(diag.to_obj(), indent=2), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    passed, results = verify.run_suites(args.suite)
    lines = []
    for name, cases, failures, worst in results:
        status = "pass" if failures == 0 else "FAIL"
        extra = "" if worst is None else f", worst slack {worst:.3e}"
        lines.append(f"[{status}] {name}: {cases} cases, {failures} failures{extra}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK if passed else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kazhlip",
        description="Exact PL homeomorphisms of the line, Koopman L^p "
        "actions, and Kazhdan-constant upper bounds.",
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=None,
        help="significant decimal digits for real arithmetic (>= 15; "
        "default from KAZHLIP_PRECISION or 30)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=("text", "json")):
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument("--format", default=fmt_choices[0], choices=fmt_choices)

    p = sub.add_parser("phi", help="evaluate the lower-bound function phi(t)")
    p.add_argument("t", type=float)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("phi-inv", help="evaluate phi^{-1}(t)")
    p.add_argument("t", type=float)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_phi_inv)

    p = sub.add_parser("phi-table", help="emit branch tables for the bound functions")
    p.add_argument(
        "--which",
        choices=("phi-branches", "phi-inv-branches"),
        default="phi-branches",
    )
    p.add_argument("--grid", default=None, help="start:end:step")
    common(p, ("csv", "svg"))
    p.set_defaults(func=cmd_phi_table)

    p = sub.add_parser("lip", help="per-generator Lipschitz/displacement data")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_lip)

    p = sub.add_parser("fixed-points", help="exact global fixed set of a generating set")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_fixed_points)

    for name, help_text, func, fmts in (
        ("bound", "Kazhdan upper-bound report", cmd_bound, ("text", "json", "csv")),
        ("sweep", "per-(p, n) sweep as CSV", cmd_sweep, ("csv",)),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input")
        p.add_argument("--p", default=None, help="comma-separated exponents (>= 2)")
        p.add_argument(
            "--schedule", default=None, help="comma-separated window radii n"
        )
        common(p, fmts)
        p.set_defaults(func=func)

    p = sub.add_parser("limit-diag", help="limit-translation diagnostics for a stage sequence")
    p.add_argument("input")
    p.add_argument("--words", default=None, help="comma-separated words, e.g. 'a,a b,a^-1'")
    p.add_argument("--base", default="0")
    p.add_argument("--tol", type=float, default=limits.DEFAULT_CAUCHY_TOL)
    common(p, ("json", "csv"))
    p.set_defaults(func=cmd_limit_diag)

    p = sub.add_parser("verify", help="run the built-in property suites")
    p.add_argument(
        "suite",
        nargs="?",
        default="all",
        choices=("group-axioms", "koopman", "mazur", "lemmas", "all"),
    )
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.precision is not None:
            set_precision(args.precision)
        if args.command == "phi-table" and args.grid is None:
            args.grid = "0:1.4:0.01" if args.which == "phi-branches" else "1:23:0.1"
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HypothesisFlag as exc:
        print(f"hypothesis flag: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (DomainError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
