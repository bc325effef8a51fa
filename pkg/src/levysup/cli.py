"""Command-line front end.

Dispatches supremum queries to the analytic formulas and the Monte Carlo
engine and prints comparison tables, one row per query, as CSV (default)
or JSON.  Numeric fields are serialized with 9 significant digits and the
output for a given argv + seed is byte-stable.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 convergence
failure, 4 at least one verification row failed its comparison.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import levy_model as lm
from . import mc_engine as eng
from . import sup_calc as sc
from .errors import ConvergenceError, DomainError

COLUMNS = ["kind", "alpha", "t", "u", "analytic", "mc_est", "mc_se",
           "ci_low", "ci_high", "bound", "pass"]

KINDS = ("sn-stable", "sp-stable", "brownian")

# closed-form vs quadrature-route agreement demanded from verify-prop
PROP_ANALYTIC_TOL = 1e-5


@dataclass
class SupReport:
    """One output row: query echo, analytic value, MC columns, verdict."""

    kind: str
    alpha: float
    t: float
    u: float = None
    analytic: float = None
    mc: object = None
    bound: float = None
    passed: bool = True

    def cells(self):
        est = self.mc
        vals = [self.kind, self.alpha, self.t, self.u, self.analytic,
                est.estimate if est else None,
                est.std_error if est else None,
                est.ci99[0] if est else None,
                est.ci99[1] if est else None,
                self.bound, self.passed]
        return dict(zip(COLUMNS, vals))


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".9g")
    return str(v)


def _emit(reports, fmt, out):
    if fmt == "json":
        rows = []
        for r in reports:
            row = {}
            for k, v in r.cells().items():
                if isinstance(v, float):
                    v = float(format(v, ".9g"))
                row[k] = v
            rows.append(row)
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        out.write(",".join(COLUMNS) + "\n")
        for r in reports:
            out.write(",".join(_fmt(v) for v in r.cells().values()) + "\n")


def _quad_tol():
    raw = os.environ.get("LEVYSUP_QUAD_TOL")
    if raw is None:
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise DomainError(f"LEVYSUP_QUAD_TOL is not a number: {raw!r}")
    if not tol > 0.0:
        raise DomainError(f"LEVYSUP_QUAD_TOL must be positive, got {tol}")
    return tol


def _model(kind, alpha, vol):
    if kind == "brownian":
        return lm.brownian(vol)
    if alpha is None:
        raise DomainError(f"--alpha is required for kind {kind!r}")
    if kind == "sp-stable":
        return lm.spectrally_positive_stable(alpha)
    return lm.spectrally_negative_stable(alpha)


def _floats(text):
    try:
        vals = [float(p) for p in text.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty number list")
    return vals


def _cmd_esup(args, tol):
    m = _model(args.kind, args.alpha, args.vol)
    if args.kind == "sn-stable":
        val = sc.esup_stable_negative_closed(args.alpha, args.t, tol=tol)
    elif args.kind == "sp-stable":
        val = sc.esup_spectrally_positive(m, args.t,
                                          tol=tol or sc.DOUBLE_LAYER_TOL)
    else:
        val = args.vol * sc.esup_stable_negative_closed(2.0, args.t, tol=tol)
    return [SupReport(args.kind, m.alpha, args.t, analytic=val)]


def _cmd_suptail(args, tol):
    m = _model(args.kind, args.alpha, args.vol)
    bound = None
    if args.kind == "sn-stable":
        val = sc.sup_tail_stable_negative(args.alpha, args.t, args.u)
        bound = sc.albin_upper_bound(args.alpha, args.t, args.u)
    elif args.kind == "sp-stable":
        val = sc.sup_tail_spectrally_positive(m, args.t, args.u,
                                              tol=tol or sc.DOUBLE_LAYER_TOL)
    else:
        if args.u < 0.0:
            raise DomainError(f"level must be >= 0, got {args.u}")
        val = min(1.0, 2.0 * lm.marginal_survival(m, args.u, args.t))
    return [SupReport(args.kind, m.alpha, args.t, u=args.u, analytic=val)]


def _cmd_mc(args, tol):
    m = _model(args.kind, args.alpha, args.vol)
    cfg = eng.McConfig(args.paths, args.steps, args.seed, horizon=args.t)
    if args.u is not None:
        est = eng.estimate_sup_tail(m, cfg, args.u)
    else:
        est = eng.estimate_esup(m, cfg)
    return [SupReport(args.kind, m.alpha, args.t, u=args.u, mc=est)]


def _cmd_verify_theorem(args, tol):
    m = lm.spectrally_negative_stable(args.alpha)
    cfg = eng.McConfig(args.paths, args.steps, args.seed, horizon=args.t)
    estimates = eng.estimate_sup_tail_levels(m, cfg, args.u)
    reports = []
    for u, est in zip(args.u, estimates):
        analytic = sc.sup_tail_stable_negative(args.alpha, args.t, u)
        bound = sc.albin_upper_bound(args.alpha, args.t, u)
        ok = abs(analytic - est.estimate) <= max(3.0 * est.std_error,
                                                 args.slack)
        ok = ok and est.estimate <= bound + 3.0 * est.std_error
        reports.append(SupReport("sn-stable", args.alpha, args.t, u=u,
                                 analytic=analytic, mc=est, bound=bound,
                                 passed=ok))
    return reports


def _cmd_verify_prop(args, tol):
    m = _model(args.kind, args.alpha, args.vol)
    cfg = eng.McConfig(args.paths, args.steps, args.seed, horizon=args.t)
    qtol = tol or sc.DOUBLE_LAYER_TOL
    if args.kind == "sp-stable":
        analytic = sc.esup_spectrally_positive(m, args.t, tol=qtol)
        closed = sc.esup_stable_negative_closed(m.alpha, args.t, tol=tol)
    else:
        analytic = sc.esup_spectrally_negative(m, args.t, tol=qtol)
        closed = sc.esup_stable_negative_closed(m.alpha, args.t, tol=tol)
        if args.kind == "brownian":
            closed *= args.vol
    est = eng.estimate_esup(m, cfg)
    ok = abs(analytic - closed) <= PROP_ANALYTIC_TOL * max(1.0, abs(closed))
    ok = ok and abs(analytic - est.estimate) <= max(3.0 * est.std_error,
                                                    args.slack)
    # the closed-form cross value rides in the bound column
    return [SupReport(args.kind, m.alpha, args.t, analytic=analytic, mc=est,
                      bound=closed, passed=ok)]


def _cmd_table(args, tol):
    reports = []
    for a in args.alpha:
        for u in args.u:
            analytic = sc.sup_tail_stable_negative(a, args.t, u)
            bound = sc.albin_upper_bound(a, args.t, u)
            reports.append(SupReport("sn-stable", a, args.t, u=u,
                                     analytic=analytic, bound=bound))
    return reports


def _build_parser():
    top = argparse.ArgumentParser(
        prog="levysup",
        description="Supremum functionals of spectrally one-sided "
                    "processes: analytic values, bounds, and Monte Carlo "
                    "verification.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, kind=True, level=False):
        if kind:
            p.add_argument("--kind", choices=KINDS, required=True)
            p.add_argument("--alpha", type=float,
                           help="stability index in (1, 2]")
            p.add_argument("--vol", type=float, default=1.0,
                           help="brownian volatility (default 1)")
        p.add_argument("--t", type=float, required=True, help="horizon")
        if level:
            p.add_argument("--u", type=float, required=True, help="level")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    def mc_flags(p):
        p.add_argument("--paths", type=int, required=True)
        p.add_argument("--steps", type=int, required=True)
        p.add_argument("--seed", type=int, required=True,
                       help="mandatory: estimates must be reproducible")

    p = sub.add_parser("esup", help="analytic expected supremum")
    common(p)
    p.set_defaults(fn=_cmd_esup)

    p = sub.add_parser("suptail", help="analytic supremum tail probability")
    common(p, level=True)
    p.set_defaults(fn=_cmd_suptail)

    p = sub.add_parser("mc", help="raw Monte Carlo estimate (tail with --u, "
                                  "expected supremum without)")
    common(p)
    p.add_argument("--u", type=float, default=None)
    mc_flags(p)
    p.set_defaults(fn=_cmd_mc)

    p = sub.add_parser("verify-theorem",
                       help="factor-alpha tail law vs Monte Carlo")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--u", type=_floats, required=True,
                   help="comma-separated levels")
    p.add_argument("--slack", type=float, default=0.01)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    mc_flags(p)
    p.set_defaults(fn=_cmd_verify_theorem)

    p = sub.add_parser("verify-prop",
                       help="expected-supremum formula vs closed form and "
                            "Monte Carlo")
    common(p)
    p.add_argument("--slack", type=float, default=0.015)
    mc_flags(p)
    p.set_defaults(fn=_cmd_verify_prop)

    p = sub.add_parser("table", help="alpha x u sweep of the tail law")
    p.add_argument("--alpha", type=_floats, required=True)
    p.add_argument("--u", type=_floats, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=_cmd_table)

    return top


def run(argv, out=None):
    """Parse argv, execute, print rows; returns the process exit code."""
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if not e.code else 1
    try:
        reports = args.fn(args, _quad_tol())
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return 2
    except ConvergenceError as e:
        print(f"convergence error: {e}", file=sys.stderr)
        return 3
    _emit(reports, args.format, out)
    if not all(r.passed for r in reports):
        return 4
    return 0


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
