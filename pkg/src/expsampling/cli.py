"""Command line front end.

Exit codes: 0 ok, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings

import numpy as np
from scipy import integrate

from . import golden
from .jumps import convergence_sweep
from .kernels import TailWarning, get_kernel, mellin_coefficient, validate_kernel
from .prediction import predict_from_past
from .series import generalized_series, kantorovich_series
from .signals import get_signal, make_paper_signal, parse_log
from .smoothness import check_bound

JUMPS = {"1/e": -1.0, "e": 1.0, "4": math.log(4.0)}
TRUNCATED_RESIDUAL_MAX = 1e-3
MODES = {"kantorovich": kantorovich_series, "classical": generalized_series,
         "predict": predict_from_past}


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from exc


def _pair(text: str) -> tuple[float, float]:
    vals = _floats(text)
    if len(vals) != 2 or not vals[0] < vals[1]:
        raise argparse.ArgumentTypeError(f"expected LO,HI with LO < HI: {text!r}")
    return vals[0], vals[1]


def _kernel(spec):
    try:
        return get_kernel(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _signal(spec):
    try:
        return get_signal(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(args, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def cmd_table(args) -> int:
    lt = JUMPS[args.jump]
    chis = [_kernel(k) for k in args.kernels.split(",") if k.strip()]
    if not chis:
        raise UsageError("no kernels given")
    f = make_paper_signal()
    table = convergence_sweep(chis, f, None, args.w, log_t=lt)
    _emit(args, table.to_csv(decimals=4 if args.check else None))
    if not args.check:
        return 0
    gold = golden.TABLES[args.jump]
    tol = args.tol if args.tol is not None else 1e-3
    bad = 0
    if abs(table.limit - gold["limit"]) > tol:
        _say(args, f"limit: got {table.limit:.4f}, table {gold['limit']:.4f}")
        bad += 1
    for label in table.labels:
        ref = gold.get(label)
        if ref is None:
            continue
        for w, v in zip(table.w, table.values[label]):
            if w not in golden.W:
                continue
            want = ref[golden.W.index(w)]
            if abs(v - want) > tol:
                _say(args, f"{label} w={w:g}: got {v:.4f}, table {want:.4f} "
                           f"(diff {v - want:+.4f})")
                bad += 1
    _say(args, "check passed" if not bad else f"check failed: {bad} value(s) outside ±{tol:g}")
    return 1 if bad else 0


def cmd_eval(args) -> int:
    chi, f = _kernel(args.kernel), _signal(args.signal)
    if (args.t is None) == (args.log_t is None):
        raise UsageError("give exactly one of --t and --log-t")
    try:
        log_t = parse_log(args.log_t) if args.log_t is not None else None
        value = MODES[args.mode](chi, f, args.t, args.w, log_t=log_t)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    print(repr(float(value)))
    return 0


def cmd_kernel_check(args) -> int:
    chi = _kernel(args.kernel)
    grid = np.exp(np.arange(args.grid_size) / args.grid_size)
    tol = args.tol if args.tol is not None else 1e-10
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TailWarning)
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        rep = validate_kernel(chi, grid, nu=args.nu)
        mellin = {half: [mellin_coefficient(chi, k, half) for k in range(-2, 3)]
                  for half in ("lower", "upper", "full")}
    uncertified = "not certified (tail truncated, inconclusive)"
    lines = [
        f"kernel: {chi.label}",
        f"partition residual: {rep.partition_residual:.3e}"
        + ("" if rep.partition_converged else " (tail truncated)"),
        f"M_0: {rep.m0:.6g}" if rep.moments_converged else f"M_0: {uncertified}",
        f"M_{rep.nu:g}: {rep.m_nu:.6g}" if rep.moments_converged
        else f"M_{rep.nu:g}: {uncertified}",
        f"max |chi| on [1/e, e]: {rep.max_abs_fundamental:.6g}",
        f"vanishes on [1, e): {str(rep.vanishes_on_unit).lower()}",
        f"psi_minus on [1, e): [{rep.psi_minus_min:.12g}, {rep.psi_minus_max:.12g}]"
        + (" constant" if rep.psi_minus_constant else " not constant"),
    ]
    if rep.alpha is not None:
        lines.append(f"alpha: {rep.alpha:.12g}")
    if not rep.vanishes_on_unit:
        lines.append("note: chi does not vanish on [1, e); only the integer-lattice "
                     "limit applies (the non-integer and unrestricted limits need it)")
    for half, coeffs in mellin.items():
        body = " ".join(f"k={k}:{c.real:+.10f}{c.imag:+.2e}j" for k, c in zip(range(-2, 3), coeffs))
        lines.append(f"mellin {half}: {body}")
    print("\n".join(lines))

    failures = []
    # a truncated tail can hide a little mass, never this much
    limit = tol if rep.partition_converged else TRUNCATED_RESIDUAL_MAX
    if rep.partition_residual >= limit:
        failures.append("partition of unity")
    if rep.moments_converged and not math.isfinite(rep.m0):
        failures.append("M_0 finite")
    if not math.isfinite(rep.max_abs_fundamental):
        failures.append("bounded on [1/e, e]")
    if chi.alpha is not None:
        if not rep.vanishes_on_unit:
            failures.append("vanishing on [1, e)")
        if rep.alpha is None or abs(rep.alpha - chi.alpha) > 1e-10:
            failures.append(f"psi_minus = {chi.alpha:g} on [1, e)")
    for name in failures:
        _say(args, f"FAILED: {name}")
    return 1 if failures else 0


def cmd_profile(args) -> int:
    chi, f = _kernel(args.kernel), _signal(args.signal)
    lo, hi = args.t_range
    if lo <= 0:
        raise UsageError("t range must be positive")
    ts = np.linspace(lo, hi, args.points)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "f", "I_w"])
    for t in ts:
        writer.writerow([f"{t:.17g}", f"{float(f(t)):.17g}",
                         f"{kantorovich_series(chi, f, float(t), args.w):.17g}"])
    _emit(args, buf.getvalue())
    return 0


def cmd_bound_check(args) -> int:
    chi, f = _kernel(args.kernel), _signal(args.signal)
    lo, hi = args.log_range
    # interior points only, so a window ending at a jump stays off it
    pts = np.linspace(lo, hi, args.grid + 2)[1:-1]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["nu", "w", "max_err", "bound", "ok"])
    bad = 0
    try:
        for nu in args.nu:
            for w in args.w:
                res = check_bound(f, chi, nu, w, pts, modulus=f.modulus)
                bad += not res.holds
                writer.writerow([f"{nu:g}", f"{w:g}", f"{res.max_error:.17g}",
                                 f"{res.bound:.17g}", int(res.holds)])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, buf.getvalue())
    _say(args, "bound holds everywhere" if not bad else f"{bad} violation(s)")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write CSV output here instead of stdout")
    common.add_argument("--tol", type=float, help="tolerance for checks")
    common.add_argument("--quiet", action="store_true", help="suppress diagnostics")

    parser = argparse.ArgumentParser(prog="expsampling",
                                     description="Kantorovich exponential sampling series")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="series values at a jump of the test signal")
    p.add_argument("--jump", required=True, choices=sorted(JUMPS))
    p.add_argument("--kernels", default="chi_c,chi_d")
    p.add_argument("--w", type=_floats, default=list(golden.W))
    p.add_argument("--check", action="store_true", help="compare with the embedded reference values")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("eval", parents=[common], help="evaluate one series value")
    p.add_argument("kernel")
    p.add_argument("signal")
    p.add_argument("--t", type=float)
    p.add_argument("--log-t", help="exact log t, e.g. -1, 1/2 or ln(4)")
    p.add_argument("--w", type=float, required=True)
    p.add_argument("--mode", choices=sorted(MODES), default="kantorovich")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("kernel-check", parents=[common], help="validate a kernel")
    p.add_argument("kernel")
    p.add_argument("--grid-size", type=int, default=1000)
    p.add_argument("--nu", type=float, default=0.5)
    p.set_defaults(func=cmd_kernel_check)

    p = sub.add_parser("profile", parents=[common], help="curve data (t, f, I_w f)")
    p.add_argument("kernel")
    p.add_argument("signal")
    p.add_argument("--t-range", type=_pair, default=(0.1, 6.0))
    p.add_argument("--w", type=float, required=True)
    p.add_argument("--points", type=int, default=500)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("bound-check", parents=[common], help="pointwise error against the modulus bound")
    p.add_argument("kernel")
    p.add_argument("signal")
    p.add_argument("--nu", type=_floats, default=[0.25, 0.5, 0.75])
    p.add_argument("--w", type=_floats, default=[2.0, 5.0, 10.0, 50.0, 100.0])
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--log-range", type=_pair, default=(-1.5, 1.5),
                   help="log-domain window of continuity points")
    p.set_defaults(func=cmd_bound_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
