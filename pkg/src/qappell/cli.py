"""Command-line front end: ``qappell gen | verify | moments``.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for usage or validation errors.  Data goes to stdout (or ``--out``),
diagnostics to stderr.  ``QAPPELL_FORMAT`` sets the default output format.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from .alsalamcarlitz import (
    MalformedFamilyError,
    PolyFamily,
    asc_recurrence,
    params_to_json,
    related_ttrr,
    scaled_family,
)
from .appell import check_appell
from .exactnum import as_rational, format_rational, parse_rational, qparam
from .qpoly import to_json, to_latex, to_terms
from .quasi import (
    QuasiParams,
    RecurrenceMismatchError,
    Report,
    build_Q,
    check_riesz_structure,
    extract_recurrence_params,
    moments_from_ttrr,
    quasi_orthogonality_test,
    verify_extended_recurrence,
)

MAX_DEGREE = 64
FORMATS = ("json", "csv", "latex")
FAMILIES = ("asc", "scaled", "quasi")
THEOREMS = ("appell", "quasi", "rec31", "rieszchihara")


class UsageError(Exception):
    """Bad flags or inputs; reported on one line, exit code 2."""


# -- argument types -----------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonzero_rational(text: str) -> Fraction:
    value = _rational(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return value


def _q(text: str) -> Fraction:
    value = _rational(text)
    try:
        return qparam(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _degree(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= n <= MAX_DEGREE:
        raise argparse.ArgumentTypeError(f"must be between 0 and {MAX_DEGREE}")
    return n


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # one-line diagnostic, no usage dump
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--a", type=_nonzero_rational, help="Al-Salam-Carlitz parameter (asc)")
    common.add_argument("--alpha", type=_nonzero_rational)
    common.add_argument("--beta", type=_nonzero_rational)
    common.add_argument("--lambda", dest="lam", type=_nonzero_rational)
    common.add_argument("--q", type=_q)
    common.add_argument("--max-degree", type=_degree, default=None)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = _Parser(prog="qappell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("gen", parents=[common], help="print a polynomial family")
    sub.add_parser("moments", parents=[common], help="print mu_0..mu_{2N-1} of the orthogonal family")
    verify = sub.add_parser("verify", parents=[common], help="run verification checks")
    verify.add_argument("--theorem", choices=THEOREMS + ("all",), default="all")
    verify.add_argument("--input", default=None, help="JSON family written by `gen --format json`")
    return parser


# -- family construction ------------------------------------------------------

def _require(args, *names):
    for name in names:
        if getattr(args, name if name != "lambda" else "lam") is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for --family {args.family}")


def family_from_args(args) -> PolyFamily:
    if args.family is None:
        raise UsageError("--family is required")
    _require(args, "q", "max_degree")
    N = args.max_degree
    if args.family == "asc":
        _require(args, "a")
        return asc_recurrence(args.a, args.q, N)
    if args.family == "scaled":
        _require(args, "alpha", "beta")
        return scaled_family(args.alpha, args.beta, args.q, N)
    _require(args, "alpha", "beta", "lambda")
    return build_Q(QuasiParams(args.alpha, args.beta, args.lam, args.q), N)


def load_family(path: str) -> PolyFamily:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        family = PolyFamily.from_dict(data)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, MalformedFamilyError) as exc:
        raise UsageError(f"--input: cannot read family from {path}: {exc}") from None
    kind = family.params.get("family")
    if kind not in FAMILIES:
        raise UsageError(f"--input: family kind {kind!r} carries no construction parameters")
    return family


def _param(family: PolyFamily, key: str) -> Fraction:
    return as_rational(family.params[key])


def _lambda_for(family: PolyFamily, args) -> Fraction:
    if family.params.get("family") == "quasi":
        return _param(family, "lambda")
    if args.lam is None:
        raise UsageError("--lambda is required for the rec31 check on an orthogonal family")
    return args.lam


def _related_orthogonal(family: PolyFamily, N: int) -> PolyFamily:
    """The orthogonal family the given one is measured against."""
    kind = family.params["family"]
    q = _param(family, "q")
    if kind == "asc":
        return asc_recurrence(_param(family, "a"), q, N)
    return scaled_family(_param(family, "alpha"), _param(family, "beta"), q, N)


# -- checks ------------------------------------------------------------------

def run_checks(family: PolyFamily, theorems, args) -> list[Report]:
    q = _param(family, "q")
    N = family.max_degree
    params = params_to_json(family.params)
    reports = []
    for name in theorems:
        extra = {}
        if name == "appell":
            ar = check_appell(family, q)
            rep = Report("appell", ar.passed, None if ar.defect is None else ar.defect.to_dict())
        elif name == "quasi":
            M = max(2 * N - 1, 0)
            rep = quasi_orthogonality_test(family, moments_from_ttrr(related_ttrr(family.params, M), M), N)
        elif name == "rec31":
            lam = _lambda_for(family, args)
            if N < 3:
                raise UsageError("--max-degree must be at least 3 for the rec31 check")
            try:
                rp = extract_recurrence_params(family, lam, q)
            except RecurrenceMismatchError as exc:
                rep = Report("3.1", False, {"n": exc.n, "reason": str(exc), "residual": to_json(exc.residual)})
            else:
                # Q_0..Q_N covers the recurrence for n = 0..N-1
                rep = verify_extended_recurrence(family, rp, q, N - 1)
                extra = {"recurrence": rp.to_dict()}
        else:
            lam = _param(family, "lambda") if family.params["family"] == "quasi" else None
            rep = check_riesz_structure(family, _related_orthogonal(family, N), lam, q)
        reports.append(Report(rep.theorem, rep.passed, rep.first_failure, {**params, **extra}, rep.failures))
    return reports


# -- rendering ---------------------------------------------------------------

def render_family(family: PolyFamily, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(family.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        return "".join(f"{n}, " + ", ".join(to_terms(p)) + "\n" for n, p in enumerate(family))
    rows = "\n".join(f"{n} & ${to_latex(p)}$ \\\\" for n, p in enumerate(family))
    return "\\begin{tabular}{rl}\n$n$ & polynomial \\\\\n\\hline\n" + rows + "\n\\end{tabular}\n"


def render_moments(params: dict, moments, fmt: str) -> str:
    values = [format_rational(m) for m in moments]
    if fmt == "json":
        return json.dumps({"params": params, "moments": values}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "mu"])
        writer.writerows([k, v] for k, v in enumerate(values))
        return buf.getvalue()
    rows = "\n".join(f"{k} & ${v}$ \\\\" for k, v in enumerate(values))
    return "\\begin{tabular}{rl}\n$k$ & $\\mu_k$ \\\\\n\\hline\n" + rows + "\n\\end{tabular}\n"


def render_reports(reports: list[Report], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theorem", "pass", "first_failure"])
        for r in reports:
            ff = "" if r.first_failure is None else json.dumps(r.first_failure, sort_keys=True)
            writer.writerow([r.theorem, "true" if r.passed else "false", ff])
        return buf.getvalue()
    rows = "\n".join(f"{r.theorem} & {'pass' if r.passed else 'FAIL'} \\\\" for r in reports)
    return "\\begin{tabular}{ll}\ncheck & result \\\\\n\\hline\n" + rows + "\n\\end{tabular}\n"


# -- entry point -------------------------------------------------------------

def _resolve_format(args) -> str:
    if args.format is not None:
        return args.format
    env = os.environ.get("QAPPELL_FORMAT")
    if env is None:
        return "json"
    if env not in FORMATS:
        raise UsageError(f"QAPPELL_FORMAT must be one of {', '.join(FORMATS)}, got {env!r}")
    return env


def run(args) -> tuple[int, str]:
    fmt = _resolve_format(args)
    if args.command == "gen":
        return 0, render_family(family_from_args(args), fmt)

    if args.command == "moments":
        family = family_from_args(args)
        M = max(2 * args.max_degree - 1, 0)
        L = moments_from_ttrr(related_ttrr(family.params, M), M)
        return 0, render_moments(params_to_json(family.params), L.moments, fmt)

    if args.input is not None:
        family = load_family(args.input)
    else:
        family = family_from_args(args)
    theorems = THEOREMS if args.theorem == "all" else (args.theorem,)
    reports = run_checks(family, theorems, args)
    code = 0 if all(r.passed for r in reports) else 1
    return code, render_reports(reports, fmt)


_RATIONAL_FLAGS = ("--a", "--alpha", "--beta", "--lambda", "--q")
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse would read "--q -1/2" as two options
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RATIONAL_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        code, text = run(args)
    except UsageError as exc:
        print(f"qappell: error: {exc}", file=sys.stderr)
        return 2
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
