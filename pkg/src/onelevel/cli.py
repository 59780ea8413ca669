"""Command-line front end.

Exit status is 0 on success, 1 on invalid input and 2 when an internal check
(singular coefficient system, residual blowup, failed verification) trips.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import analysis as an
from . import closedform as cf
from . import fredholm as fr
from . import reduction as rd
from . import transcribed as tr
from . import verify
from .symmetry import SymmetryGroup

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InputError(Exception):
    """Bad command-line input; reported with exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _fmt(value) -> str:
    if isinstance(value, float) or isinstance(value, np.floating):
        return f"{float(value):.17g}"
    return str(value)


def _positive(kind):
    def parse(text):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a valid {kind.__name__}: {text!r}") from None
        if not value > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value
    return parse


def _group(text):
    try:
        return SymmetryGroup.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="onelevel", description="Optimal test functions for one-level density bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, group=True, sigma=True, method=True):
        if group:
            p.add_argument("--group", type=_group, required=True, help="O, SO(even), SO(odd) or Sp")
        if sigma:
            p.add_argument("--sigma", type=_positive(float), required=True)
        if method:
            p.add_argument("--method", choices=["closed", "nystrom"], default="closed")
            p.add_argument("--n", type=_positive(int), default=400, help="Nystrom subintervals")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    def span(p):
        p.add_argument("--from", dest="lo", type=_positive(float), required=True)
        p.add_argument("--to", dest="hi", type=_positive(float), required=True)
        p.add_argument("--step", type=_positive(float), required=True)

    def sampling(p):
        p.add_argument("--samples", type=_positive(int), default=401)
        p.add_argument("--range", dest="half_width", type=_positive(float), default=5.0)

    common(sub.add_parser("solve", help="optimal g"))
    common(sub.add_parser("infimum", help="infimum with residual certificate"))
    p = sub.add_parser("sweep", help="infimum and naive bound over a sigma range")
    common(p, sigma=False)
    span(p)
    p = sub.add_parser("phi", help="samples of the optimal test function")
    common(p)
    sampling(p)
    p = sub.add_parser("phihat", help="samples of its Fourier transform")
    common(p, method=False)
    sampling(p)
    p = sub.add_parser("reduce", help="interval systems and reduced ODEs")
    p.add_argument("--group", type=_group, default=SymmetryGroup.SOeven)
    p.add_argument("--sigma", type=_positive(float), required=True)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--out", default=None)
    p = sub.add_parser("compare", help="naive versus optimal bounds")
    common(p, sigma=False)
    span(p)
    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--seed", type=int, default=verify.SEED)
    p.add_argument("--out", default=None)
    return parser


def _table(header, rows, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        payload = dict(extra or {})
        payload["rows"] = [dict(zip(header, row)) for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _cmd_solve(args) -> str:
    g = an.solve_g(args.group, args.sigma, args.method, args.n)
    if isinstance(g, cf.PiecewiseTrig):
        if args.format == "json":
            return g.to_json() + "\n"
        xs = fr.Grid(args.sigma, args.n).nodes
        return _table(["x", "g"], zip(xs.tolist(), g(xs).tolist()), "csv")
    if args.format == "csv":
        return g.to_csv()
    return _table(["x", "g"], zip(g.nodes.tolist(), g.values.tolist()), "json",
                  {"group": args.group.value, "sigma": args.sigma, "n": args.n})


def _cmd_infimum(args) -> str:
    r = an.infimum(args.group, args.sigma, args.method, args.n)
    header = ["group", "sigma", "method", "value", "inner_product", "residual"]
    return _table(header, [[r.group.value, r.sigma, r.method.value, r.value, r.inner_product, r.residual]],
                  args.format)


def _check_span(args):
    if not args.lo < args.hi:
        raise InputError(f"--from ({args.lo}) must be smaller than --to ({args.hi})")


def _cmd_sweep(args) -> str:
    _check_span(args)
    res = an.sweep(args.group, args.lo, args.hi, args.step, args.method, args.n)
    header = ["sigma", "optimal_inf", "naive_bound", "improvement", "residual", "method"]
    rows = [[r.sigma, r.optimal_inf, r.naive_bound, r.improvement, r.residual, r.method] for r in res]
    return _table(header, rows, args.format, {"monotone": res.monotone, "worst_step": res.worst_step})


def _cmd_compare(args) -> str:
    _check_span(args)
    res = an.sweep(args.group, args.lo, args.hi, args.step, args.method, args.n)
    header = ["sigma", "optimal_inf", "naive_bound", "printed_naive_bound", "improvement"]
    rows = [[r.sigma, r.optimal_inf, r.naive_bound, tr.printed_naive_bound(args.group, r.sigma), r.improvement]
            for r in res]
    return _table(header, rows, args.format)


def _samples(args):
    return np.linspace(-args.half_width, args.half_width, args.samples) if args.samples > 1 else np.zeros(1)


def _cmd_phi(args) -> str:
    g = an.solve_g(args.group, args.sigma, args.method, args.n)
    return _table(["x", "value"], an.phi_from_g(g, _samples(args)), args.format)


def _cmd_phihat(args) -> str:
    g = cf.closed_form_g(args.group, args.sigma)
    return _table(["x", "value"], an.phi_hat_from_g(g, _samples(args)), args.format)


def _ode_dict(ode):
    if ode is None:
        return None
    return {"order": ode.order, "coeffs": [float(c) for c in ode.coeffs], "exact": [str(c) for c in ode.coeffs]}


def _cmd_reduce(args) -> str:
    system = rd.interval_systems(args.sigma)
    odes = rd.outside_odes(args.sigma, args.group)
    data = {
        "sigma": args.sigma,
        "group": args.group.value,
        "case": system.case.value,
        "k": system.k,
        "dimension": rd.dimension(args.sigma),
        "breakpoints": rd.breakpoint_count(args.sigma),
        "degenerate": system.degenerate.value if system.degenerate else None,
        "intervals": {"first": [list(iv) for iv in system.first], "second": [list(iv) for iv in system.second]},
        "odes": {"first": _ode_dict(odes.first), "second": _ode_dict(odes.second)},
    }
    if args.format == "json":
        return json.dumps(data, indent=2) + "\n"
    rows = [[k, data[k]] for k in ("sigma", "group", "case", "k", "dimension", "breakpoints", "degenerate")]
    for name in ("first", "second"):
        ode = data["odes"][name]
        rows.append([f"ode_{name}", " ".join(ode["exact"]) if ode else None])
    return _table(["key", "value"], rows, "csv")


def _cmd_verify(args) -> tuple:
    results = verify.run_checks(args.seed)
    lines = [f"# onelevel verify seed={args.seed} checks={len(results)}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name}: measured={r.measured:.3e} threshold={r.threshold:.1e}")
    failed = sum(not r.passed for r in results)
    lines.append(f"# {len(results) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n", EXIT_OK if failed == 0 else EXIT_INTERNAL


COMMANDS = {
    "solve": _cmd_solve, "infimum": _cmd_infimum, "sweep": _cmd_sweep, "compare": _cmd_compare,
    "phi": _cmd_phi, "phihat": _cmd_phihat, "reduce": _cmd_reduce, "verify": _cmd_verify,
}


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out = COMMANDS[args.command](args)
        text, status = out if isinstance(out, tuple) else (out, EXIT_OK)
        _emit(text, args.out)
        return status
    except (InputError, cf.RangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (cf.CoefficientError, fr.SingularSystemError, ArithmeticError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
