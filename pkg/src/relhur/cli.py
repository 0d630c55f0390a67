"""Command-line front end: single evaluations, sweeps, and anchor checks.

Subcommands map one-to-one onto the library's main results:

    bound     lowest eigenvalue of the radial operator at one scale d
    sweep     the bound curve gamma(d) over a grid of d values
    hydrogen  closed-form uncertainty product of a hydrogen-like ion
    hopfion   uncertainty product of the localized free-electron packet
    verify    built-in anchor suite, prints a pass/fail table

Documents go to stdout (or --output PATH) as CSV (LF line endings, header
exactly `param,gamma,err_est`) or JSON with 12 significant digits, both
serialized manually so identical invocations are byte-identical.  Exit
codes: 0 success, 1 numerical failure or failed verify anchor, 2 usage
error (bad flags, out-of-domain parameters, unwritable output).

REL_HUR_THREADS caps thread parallelism for sweep grids; output order is
by parameter regardless of completion order.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import hopfion as _hopfion
from . import hydrogen as _hydrogen
from . import rel_uncertainty as _bound
from .quadrature import QuadConfig, QuadratureError
from .radial_eigensolver import SolverError
from .specfun import bessel_k

BOUND_TOL = 1e-7
_CSV_HEADER = "param,gamma,err_est"


class _UsageError(Exception):
    pass


def _fmt(x) -> str:
    """12-significant-digit text form shared by CSV and JSON."""
    if isinstance(x, bool):
        raise TypeError("no boolean fields in output documents")
    if isinstance(x, int):
        return str(x)
    x = float(x)
    out = f"{x:.12g}"
    if math.isfinite(x) and "." not in out and "e" not in out:
        out += ".0"  # floats must read back as floats
    return out


def _json_value(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return '"inf"'
    return _fmt(x)


def _json_obj(pairs: Sequence[tuple[str, object]]) -> str:
    return "{" + ",".join(f'"{k}":{_json_value(v)}' for k, v in pairs) + "}"


def _json_doc(pairs: Sequence[tuple[str, object]]) -> str:
    return _json_obj(pairs) + "\n"


def _json_rows(rows: Sequence[Sequence[tuple[str, object]]]) -> str:
    body = ",\n".join(_json_obj(r) for r in rows)
    return "[\n" + body + "\n]\n"


def _csv_doc(rows: Sequence[tuple[object, object, object]]) -> str:
    lines = [_CSV_HEADER]
    for param, gamma, err in rows:
        lines.append(f"{_fmt(param)},{_fmt(gamma)},{_fmt(err)}")
    return "\n".join(lines) + "\n"


def _worker_count() -> int:
    raw = os.environ.get("REL_HUR_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _ordered_map(fn: Callable, xs: Sequence) -> list:
    n = min(_worker_count(), len(xs))
    if n <= 1:
        return [fn(x) for x in xs]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, xs))  # map preserves argument order


def _require_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise _UsageError(f"{name} must be finite, got {value!r}")
    return value


def _grid(lo: float, hi: float, points: int, log: bool) -> list[float]:
    if points < 2:
        raise _UsageError("--points must be at least 2")
    _require_finite("--d-min/--a-min", lo)
    _require_finite("--d-max/--a-max", hi)
    if not hi > lo:
        raise _UsageError("upper grid end must exceed the lower end")
    if log:
        if not lo > 0.0:
            raise _UsageError("--log needs a positive lower end")
        ratio = (hi / lo) ** (1.0 / (points - 1))
        out = [lo * ratio ** i for i in range(points)]
    else:
        step = (hi - lo) / (points - 1)
        out = [lo + step * i for i in range(points)]
    out[-1] = hi  # endpoint exact despite rounding
    return out


def _cmd_bound(args) -> tuple[str, int]:
    if args.d_inf:
        d = _bound.INFINITY
    else:
        d = _require_finite("--d", args.d)
        if d < 0.0:
            raise _UsageError("--d must be non-negative")
    rep = _bound.gamma_bound_report(d, tol=BOUND_TOL)
    fmt = args.format or "json"
    if fmt == "json":
        doc = _json_doc([("d", d), ("gamma", rep.gamma),
                         ("err_est", rep.est_error), ("tol", BOUND_TOL)])
    else:
        doc = _csv_doc([(d, rep.gamma, rep.est_error)])
    return doc, 0


def _cmd_sweep(args) -> tuple[str, int]:
    ds = _grid(args.d_min, args.d_max, args.points, args.log)
    if ds[0] < 0.0:
        raise _UsageError("--d-min must be non-negative")
    reps = _ordered_map(
        lambda d: _bound.gamma_bound_report(d, tol=BOUND_TOL), ds)
    rows = [(r.d, r.gamma, r.est_error) for r in reps]
    fmt = args.format or "csv"
    if fmt == "csv":
        doc = _csv_doc(rows)
    else:
        doc = _json_rows([[("param", p), ("gamma", g), ("err_est", e)]
                          for p, g, e in rows])
    return doc, 0


def _cmd_hydrogen(args) -> tuple[str, int]:
    state = _hydrogen.CoulombState(Z=args.Z, alpha=args.alpha)
    closed = _hydrogen.uncertainty_product_closed(state)
    d = _hydrogen.d_parameter(state)
    pairs: list[tuple[str, object]] = [
        ("Z", state.Z), ("alpha", state.alpha), ("gamma_c", state.gamma_c),
        ("gamma", closed), ("d", d),
    ]
    err: float = 0.0
    if args.oracle:
        rep = _hydrogen.quadrature_oracle(state)
        err = abs(rep.gamma - closed) / closed
        pairs += [("gamma_oracle", rep.gamma), ("rel_diff", err)]
    fmt = args.format or "json"
    if fmt == "json":
        doc = _json_doc(pairs)
    else:
        doc = _csv_doc([(state.Z, closed, err)])
    return doc, 0


def _cmd_hopfion(args) -> tuple[str, int]:
    curve_flags = (args.a_min is not None, args.a_max is not None,
                   args.points is not None)
    if args.a is not None:
        if any(curve_flags):
            raise _UsageError("--a conflicts with --a-min/--a-max/--points")
        a = _require_finite("--a", args.a)
        rep = _hopfion.gamma_h(_hopfion.HopfionState(a))
        fmt = args.format or "json"
        cfg = QuadConfig()
        err = cfg.rel_tol * rep.gamma
        if fmt == "json":
            doc = _json_doc([("a", a), ("gamma", rep.gamma),
                             ("delta_r_sq", rep.delta_r_sq),
                             ("delta_p_sq", rep.delta_p_sq),
                             ("err_est", err)])
        else:
            doc = _csv_doc([(a, rep.gamma, err)])
        return doc, 0
    if not all(curve_flags):
        raise _UsageError("provide either --a or all of --a-min/--a-max/--points")
    a_grid = _grid(args.a_min, args.a_max, args.points, log=False)
    cfg = QuadConfig()
    reps = _ordered_map(
        lambda a: _hopfion.gamma_h(_hopfion.HopfionState(a), cfg), a_grid)
    rows = [(a, r.gamma, cfg.rel_tol * r.gamma)
            for a, r in zip(a_grid, reps)]
    fmt = args.format or "csv"
    if fmt == "csv":
        doc = _csv_doc(rows)
    else:
        doc = _json_rows([[("param", p), ("gamma", g), ("err_est", e)]
                          for p, g, e in rows])
    return doc, 0


def _verify_rows(strict: bool) -> list[tuple[str, float, float, float, bool]]:
    rows = []

    g0 = _bound.gamma_bound(0.0, tol=BOUND_TOL)
    rows.append(("bound_nonrelativistic", g0, _bound.GAMMA_AT_0,
                 1e-7, abs(g0 - _bound.GAMMA_AT_0) <= 1e-7))
    gi = _bound.gamma_bound(_bound.INFINITY, tol=BOUND_TOL)
    rows.append(("bound_ultrarelativistic", gi, _bound.GAMMA_AT_INF,
                 1e-6, abs(gi - _bound.GAMMA_AT_INF) <= 1e-6))
    # weak-field hydrogen: the closed form must agree with an integration
    # of the actual wave function, which is the meaningful self-check
    closed = _hydrogen.product_closed_gamma(1.0)
    oracle = _hydrogen.oracle_gamma(1.0).gamma
    rows.append(("hydrogen_closed_vs_oracle", oracle, closed,
                 1e-6, abs(oracle - closed) / closed <= 1e-6))
    dev = 0.0
    for x in (1e-3, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0):
        k2 = bessel_k(2, x)
        dev = max(dev, abs(k2 - bessel_k(0, x) - 2.0 * bessel_k(1, x) / x) / k2)
    rows.append(("bessel_k2_recurrence_dev", dev, 0.0, 1e-10, dev <= 1e-10))
    if strict:
        r0 = _bound.gaussian_limit_residual(_bound.GAMMA_AT_0)
        rows.append(("nonrel_limit_residual", r0, 0.0, 1e-10, r0 <= 1e-10))
        ri = _bound.ultrarelativistic_limit_residual(_bound.GAMMA_AT_INF)
        rows.append(("ultra_limit_residual", ri, 0.0, 1e-10, ri <= 1e-10))
        ratio1 = _hopfion.norm_bessel_ratio(_hopfion.HopfionState(1.0))
        ratio2 = _hopfion.norm_bessel_ratio(_hopfion.HopfionState(2.0))
        rdev = abs(ratio1 / ratio2 - 1.0)
        rows.append(("hopfion_norm_ratio_dev", rdev, 0.0, 1e-8, rdev <= 1e-8))
    return rows


def _cmd_verify(args) -> tuple[str, int]:
    rows = _verify_rows(args.strict)
    lines = [f"{'anchor':<28} {'computed':>18} {'target':>14} "
             f"{'tol':>8} status"]
    all_ok = True
    for name, computed, target, tol, ok in rows:
        all_ok = all_ok and ok
        lines.append(f"{name:<28} {_fmt(computed):>18} {_fmt(target):>14} "
                     f"{_fmt(tol):>8} {'PASS' if ok else 'FAIL'}")
    lines.append(f"overall: {'PASS' if all_ok else 'FAIL'}")
    return "\n".join(lines) + "\n", 0 if all_ok else 1


_DISPATCH = {
    "bound": _cmd_bound,
    "sweep": _cmd_sweep,
    "hydrogen": _cmd_hydrogen,
    "hopfion": _cmd_hopfion,
    "verify": _cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default: json for single "
                             "records, csv for sweeps; verify is text)")
    common.add_argument("--output", default=None, metavar="PATH",
                        help="write the document to PATH instead of stdout")

    p = argparse.ArgumentParser(
        prog="relhur",
        description="Relativistic position-momentum uncertainty bounds "
                    "for Dirac electrons.")
    sub = p.add_subparsers(dest="subcommand", required=True,
                           metavar="{bound,sweep,hydrogen,hopfion,verify}")

    b = sub.add_parser("bound", parents=[common],
                       help="uncertainty bound gamma(d) at a single scale")
    scale = b.add_mutually_exclusive_group(required=True)
    scale.add_argument("--d", type=float, help="relativistic scale d >= 0")
    scale.add_argument("--d-inf", action="store_true", dest="d_inf",
                       help="the ultrarelativistic limit d = infinity")

    s = sub.add_parser("sweep", parents=[common],
                       help="bound curve gamma(d) over a d grid")
    s.add_argument("--d-min", type=float, required=True, dest="d_min")
    s.add_argument("--d-max", type=float, required=True, dest="d_max")
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--log", action="store_true",
                   help="geometric instead of linear spacing")

    h = sub.add_parser("hydrogen", parents=[common],
                       help="closed-form uncertainty product for charge Z")
    h.add_argument("--Z", type=int, required=True, help="nuclear charge")
    h.add_argument("--alpha", type=float, default=_hydrogen.ALPHA_FS,
                   help="fine-structure constant (default CODATA 2018)")
    h.add_argument("--oracle", action="store_true",
                   help="also run the quadrature oracle and report the "
                        "relative difference")

    o = sub.add_parser("hopfion", parents=[common],
                       help="uncertainty product of the localized packet")
    o.add_argument("--a", type=float, help="width parameter (single point)")
    o.add_argument("--a-min", type=float, dest="a_min")
    o.add_argument("--a-max", type=float, dest="a_max")
    o.add_argument("--points", type=int)

    v = sub.add_parser("verify", parents=[common],
                       help="run the built-in anchor suite")
    v.add_argument("--strict", action="store_true",
                   help="add the limit-residual and norm-ratio anchors")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        doc, code = _DISPATCH[args.subcommand](args)
        if args.output is not None:
            with open(args.output, "w", newline="") as fh:
                fh.write(doc)
        else:
            sys.stdout.write(doc)
        return code
    except _UsageError as exc:
        print(f"relhur {args.subcommand}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"relhur {args.subcommand}: cannot write output: {exc}",
              file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"relhur {args.subcommand}: numerical failure in "
              f"radial_eigensolver (tol={BOUND_TOL:g}): {exc}",
              file=sys.stderr)
        return 1
    except QuadratureError as exc:
        print(f"relhur {args.subcommand}: numerical failure in "
              f"quadrature: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # out-of-domain parameters (includes hydrogen.DivergenceError)
        print(f"relhur {args.subcommand}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
