"""Command-line front end.

    zonalfn eval     --p P --q Q (--rho R | --sigma-re X --sigma-im Y) --alpha A
    zonalfn table    --p P --q Q --rho-list R1,R2 --alpha-min A --alpha-max B --alpha-steps N
    zonalfn verify   --p P --q Q --rho R --alpha-list A1,A2,...
    zonalfn describe --p P --q Q --form 13|14

Exit codes: 0 success, 2 invalid arguments or domain, 3 no convergence,
4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import astuple, dataclass, fields

from .errors import ConvergenceError, ZonalError
from .horn import horn_format
from .kernel import GroupSignature, RepresentationParams, principal_sigma
from .quad import QuadratureSpec
from .results import EvalResult, MethodTag
from .zonal import HornForm, horn_series_for, verify_all, zonal_eval

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOCONV = 3
EXIT_VERIFY = 4

HEADER = ("p", "q", "sigma_re", "sigma_im", "eps", "alpha", "method", "value_re", "value_im", "abs_err_est", "work")


@dataclass(frozen=True)
class OutputRecord:
    p: int
    q: int
    sigma_re: float
    sigma_im: float
    eps: int
    alpha: float
    method: str
    value_re: float
    value_im: float
    abs_err_est: float
    work: int


def make_record(sig: GroupSignature, rep: RepresentationParams, alpha: float, res: EvalResult) -> OutputRecord:
    return OutputRecord(
        sig.orig_p,
        sig.orig_q,
        rep.sigma.real,
        rep.sigma.imag,
        rep.eps,
        float(alpha),
        str(res.method),
        res.value.real,
        res.value.imag,
        float(res.abs_err_est),
        int(res.work),
    )


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def format_records(records, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(HEADER)
        for r in records:
            w.writerow([_fmt(v) for v in astuple(r)])
        return buf.getvalue()
    if fmt == "json":
        rows = [{f.name: getattr(r, f.name) for f in fields(OutputRecord)} for r in records]
        return json.dumps(rows, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit(records, fmt: str = "csv", sink=None) -> None:
    """Write records as CSV or JSON to ``sink`` (a path) or standard output."""
    text = format_records(records, fmt)
    if sink is None or sink == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def parse_records(text: str, fmt: str = "csv") -> list:
    """Inverse of ``format_records``."""
    conv = {f.name: f.type for f in fields(OutputRecord)}
    casts = {"int": int, "float": float, "str": str}
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
    else:
        rows = json.loads(text)
    return [OutputRecord(**{k: casts[conv[k]](row[k]) for k in HEADER}) for row in rows]


def _float_list(text: str) -> list:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


class _Parser(argparse.ArgumentParser):
    # report usage errors as an exception so run() can return the code
    def error(self, message):
        raise _UsageError(message, self.format_usage())


class _UsageError(Exception):
    def __init__(self, message, usage):
        super().__init__(message)
        self.usage = usage


def _common(sp):
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", default=None, help="output file (default: standard output)")
    sp.add_argument("--max-shells", type=int, default=20000)
    sp.add_argument("--quad-base-order", type=int, default=64)
    sp.add_argument("--quad-max-order", type=int, default=4096)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="zonalfn", description="Zonal spherical functions of SO(p,q).")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate at one point")
    _common(e)
    e.add_argument("--rho", type=float)
    e.add_argument("--sigma-re", type=float)
    e.add_argument("--sigma-im", type=float)
    e.add_argument("--alpha", type=float, required=True)
    e.add_argument("--eps", type=int, default=0)
    e.add_argument("--method", default="auto")
    e.add_argument("--tol", type=float, default=1e-10)

    t = sub.add_parser("table", help="evaluate over a grid of rho and alpha")
    _common(t)
    t.add_argument("--rho-list", type=_float_list, required=True)
    t.add_argument("--alpha-min", type=float, required=True)
    t.add_argument("--alpha-max", type=float, required=True)
    t.add_argument("--alpha-steps", type=int, required=True)
    t.add_argument("--method", default="auto")
    t.add_argument("--tol", type=float, default=1e-10)

    v = sub.add_parser("verify", help="cross-validate every route")
    _common(v)
    v.add_argument("--rho", type=float, required=True)
    v.add_argument("--alpha-list", type=_float_list, required=True)
    v.add_argument("--tol", type=float, default=1e-10)

    d = sub.add_parser("describe", help="print a Horn parameter table")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--form", choices=("13", "14"), required=True)
    d.add_argument("--output", default=None)
    return ap


def _quad_spec(args, tol) -> QuadratureSpec:
    return QuadratureSpec(
        base_order=args.quad_base_order,
        max_order=args.quad_max_order,
        tol=tol,
    )


def _check_positive(name, v):
    if not v > 0:
        raise _UsageError(f"{name} must be positive", "")


def _rep_from(args, sig) -> RepresentationParams:
    explicit = args.sigma_re is not None or args.sigma_im is not None
    if explicit and args.rho is not None:
        raise _UsageError("give either --rho or --sigma-re/--sigma-im, not both", "")
    if explicit:
        sigma = complex(args.sigma_re or 0.0, args.sigma_im or 0.0)
    elif args.rho is not None:
        sigma = principal_sigma(sig, args.rho).sigma
    else:
        raise _UsageError("one of --rho or --sigma-re/--sigma-im is required", "")
    return RepresentationParams(sigma, args.eps)


def _cmd_eval(args):
    _check_positive("--tol", args.tol)
    sig = GroupSignature(args.p, args.q)
    rep = _rep_from(args, sig)
    method = MethodTag.parse(args.method)
    res = zonal_eval(sig, rep, args.alpha, method, args.tol, args.max_shells, _quad_spec(args, args.tol))
    emit([make_record(sig, rep, args.alpha, res)], args.format, args.output)
    return EXIT_OK


def _alphas(lo, hi, steps):
    if steps < 1:
        raise _UsageError("--alpha-steps must be >= 1", "")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def _cmd_table(args):
    _check_positive("--tol", args.tol)
    sig = GroupSignature(args.p, args.q)
    method = MethodTag.parse(args.method)
    spec = _quad_spec(args, args.tol)
    records = []
    for rho in args.rho_list:
        rep = principal_sigma(sig, rho)
        for a in _alphas(args.alpha_min, args.alpha_max, args.alpha_steps):
            res = zonal_eval(sig, rep, a, method, args.tol, args.max_shells, spec)
            records.append(make_record(sig, rep, a, res))
    emit(records, args.format, args.output)
    return EXIT_OK


def _cmd_verify(args):
    _check_positive("--tol", args.tol)
    sig = GroupSignature(args.p, args.q)
    rep = principal_sigma(sig, args.rho)
    eval_tol = max(args.tol * 1e-2, 1e-14)
    report = verify_all(
        sig, rep, args.alpha_list, tol=args.tol, eval_tol=eval_tol,
        max_shells=args.max_shells, quad_spec=_quad_spec(args, max(eval_tol, 1e-13)),
    )
    records = [
        make_record(sig, rep, e.alpha, e.results[m])
        for e in report.entries
        for m in report.methods
        if m in e.results
    ]
    emit(records, args.format, args.output)
    sys.stderr.write(report.summary() + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


def _cmd_describe(args):
    sig = GroupSignature(args.p, args.q)
    series = horn_series_for(HornForm(args.form), sig, 0.0)
    head = f"Z^({sig.orig_p},{sig.orig_q})_sigma(alpha) = cosh(alpha)^-1 * H(tanh^2 alpha, tanh^2 alpha)"
    if sig.swapped:
        head += f"  [evaluated as SO({sig.p},{sig.q})]"
    text = head + "\nH =\n" + horn_format(series) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


_COMMANDS = {"eval": _cmd_eval, "table": _cmd_table, "verify": _cmd_verify, "describe": _cmd_describe}


def run(argv=None) -> int:
    """Run the CLI on ``argv`` and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(exc.usage + f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ConvergenceError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_NOCONV
    except (ZonalError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
