"""Command-line front end emitting CSV/JSON for the reproducible tables.

Commands: constants, figure1, interval-ratio, cusp, fractal,
weighted-selfcheck (alias: selfcheck).  Exit codes: 0 success, 1 an
asserted inequality or property suite failed, 2 usage error, 3 numeric
failure.  CSV is comma-separated with a header row, 12 significant digits,
LF line endings; JSON mirrors the columns as field names.  Output is
bit-identical across runs for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import counterexamples as cex
from . import selfcheck as sc
from .normalization import Q_INF, ThetaQ, n_prime_theta_q, n_theta_q
from .quadrature import ConvergenceError
from .sobolev1d import InsufficientDecayError, hs_norm_fourier, sine_fourier_sq
from .spectral import (CoefficientVector, dirichlet_interval_decomposition,
                       spectral_interp_norm)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def _jsonable(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def _emit(rows: list[dict], header: list[str], fmt: str, out: str) -> None:
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_fmt(row[col]) for col in header) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        payload = [{col: _jsonable(row[col]) for col in header} for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _fig_dir(args) -> Path:
    if args.fig_dir is not None:
        return Path(args.fig_dir)
    if args.out != "-":
        return Path(args.out).resolve().parent
    return Path(".")


# ----------------------------------------------------------------- commands


def constants_rows(thetas, qs) -> list[dict]:
    rows = []
    for theta in thetas:
        for q in qs:
            p = ThetaQ(theta, q)
            n = n_theta_q(p)
            n_prime = n_prime_theta_q(p)
            rows.append({"theta": theta, "q": q, "N": n,
                         "N_prime": n_prime, "ratio": n / n_prime})
    return rows


def cmd_constants(args) -> int:
    rows = constants_rows(args.theta, args.q)
    _emit(rows, ["theta", "q", "N", "N_prime", "ratio"], args.format, args.out)
    return EXIT_OK


def figure1_rows(grid: int, jmax: int, rel_tol: float) -> list[dict]:
    dec = dirichlet_interval_decomposition(jmax)
    transforms = {j: sine_fourier_sq(j) for j in range(1, jmax + 1)}
    rows = []
    for k in range(1, grid + 1):
        theta = k / (grid + 1.0)
        row = {"theta": theta}
        for j in range(1, jmax + 1):
            unit = np.zeros(j)
            unit[j - 1] = 1.0
            star = spectral_interp_norm(dec, CoefficientVector(a=unit), theta)
            sob = hs_norm_fourier(transforms[j], theta, rel_tol)
            row[f"star_norm_phi{j}"] = star
            row[f"sobolev_norm_phi{j}"] = sob
            row[f"ratio_phi{j}"] = star / sob
        rows.append(row)
    return rows


def cmd_figure1(args) -> int:
    rows = figure1_rows(args.grid, args.jmax, args.tol)
    header = ["theta"]
    for j in range(1, args.jmax + 1):
        header += [f"star_norm_phi{j}", f"sobolev_norm_phi{j}", f"ratio_phi{j}"]
    _emit(rows, header, args.format, args.out)
    if args.plot:
        from .figures import render_figure1
        for path in render_figure1(rows, args.jmax, _fig_dir(args)):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_interval_ratio(args) -> int:
    rows = []
    ok = True
    for a in args.a:
        rec = cex.interval_ratio_bound(a)
        ok &= rec.ok
        rows.append({"a": rec.a, "l2": rec.l2, "h1": rec.h1, "h2": rec.h2,
                     "upper_bound": rec.upper_bound,
                     "ratio_bound": rec.ratio_bound,
                     "below_min_ok": rec.ok})
    _emit(rows, ["a", "l2", "h1", "h2", "upper_bound", "ratio_bound",
                 "below_min_ok"], args.format, args.out)
    return EXIT_OK if ok else EXIT_ASSERTION


def cmd_cusp(args) -> int:
    h_grid = np.geomspace(args.h_max, args.h_min, args.h_points)
    params = cex.CuspParams(p=args.p, h_grid=h_grid)
    table = cex.cusp_norm_scalings(params, args.theta, args.tol)
    tol = args.slope_tol
    ok_l2 = abs(table.slope_l2 - table.expected_slope_l2) <= tol
    ok_h2 = abs(table.slope_h2 - table.expected_slope_h2) <= tol
    ok_interp = abs(table.slope_interp - table.expected_slope_interp) <= tol
    rows = []
    for r in table.rows:
        rows.append({
            "h": r.h, "l2_norm": r.l2_norm, "h2_plus_norm": r.h2_plus_norm,
            "interp_bound": r.interp_bound,
            "slope_l2": table.slope_l2, "slope_h2": table.slope_h2,
            "slope_interp": table.slope_interp,
            "slope_l2_ok": ok_l2, "slope_h2_ok": ok_h2,
            "slope_interp_ok": ok_interp,
        })
    _emit(rows, ["h", "l2_norm", "h2_plus_norm", "interp_bound", "slope_l2",
                 "slope_h2", "slope_interp", "slope_l2_ok", "slope_h2_ok",
                 "slope_interp_ok"], args.format, args.out)
    if args.plot:
        from .figures import render_cusp
        for path in render_cusp(rows, _fig_dir(args)):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK if (ok_l2 and ok_h2 and ok_interp) else EXIT_ASSERTION


def cmd_fractal(args) -> int:
    alpha = cex.DEFAULT_CUTOFF.alpha(args.alpha_mode)
    seq = cex.fractal_sequence(alpha, args.nmax)
    log4 = math.log10(4.0)
    log_sqrt2 = 0.5 * math.log10(2.0)
    rows = []
    ok = True
    for n in range(2, seq.n_reached + 1):
        bounds = cex.fractal_phi_bounds(seq, n)
        witness = cex.fractal_witness(seq, n)
        log10_a = seq.log_a[n - 1] / math.log(10.0)
        a_ok = log10_a <= -n * log4 + 1e-12
        # The summability bound is provable from n >= 3 (the n = 2 value
        # is 2^(-3/4) > 1/2 identically, since a_1 = 1 seeds the chain).
        interp_ok = bounds.log10_interp_half_bound <= -n * log_sqrt2 + 1e-12
        ok &= a_ok and witness.ok and (interp_ok or n < 3)
        rows.append({
            "n": n, "log10_a": log10_a, "a": math.exp(seq.log_a[n - 1])
            if seq.log_a[n - 1] > -745 else 0.0,
            "a_le_4_pow_minus_n": a_ok,
            "log10_l2_bound": bounds.log10_l2_bound,
            "log10_h2_bound": bounds.log10_h2_bound,
            "log10_interp_bound": bounds.log10_interp_half_bound,
            "interp_le_sqrt2_pow_minus_n": interp_ok,
            "witness_value": witness.value,
            "witness_ok": witness.ok,
        })
    _emit(rows, ["n", "log10_a", "a", "a_le_4_pow_minus_n", "log10_l2_bound",
                 "log10_h2_bound", "log10_interp_bound",
                 "interp_le_sqrt2_pow_minus_n", "witness_value",
                 "witness_ok"], args.format, args.out)
    return EXIT_OK if ok else EXIT_ASSERTION


def cmd_selfcheck(args) -> int:
    results = sc.run_selfcheck(seed=args.seed, cases=args.cases,
                               n_atoms=args.atoms, n_scale=args.perturb_n)
    rows = [{"suite": r.suite, "cases": r.cases, "failures": r.failures,
             "max_deviation": r.max_deviation} for r in results]
    _emit(rows, ["suite", "cases", "failures", "max_deviation"],
          args.format, args.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_ASSERTION


# ------------------------------------------------------------------- parser


def _parse_q(text: str) -> float:
    value = float(text)
    if value == math.inf:
        return Q_INF
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interpnorms",
        description="Interpolation-norm tables: constants, norm comparisons, "
                    "and counterexample scalings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="-", help="output path or - for stdout")

    p = sub.add_parser("constants", help="normalization constants N, N'")
    p.add_argument("--theta", type=float, nargs="+",
                   default=[0.1 * k for k in range(1, 10)])
    p.add_argument("--q", type=_parse_q, nargs="+", default=[2.0],
                   help="exponents, 'inf' allowed")
    add_output_flags(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("figure1",
                       help="interpolation vs Fourier norms of the sine modes")
    p.add_argument("--grid", type=int, default=99,
                   help="number of interior theta points")
    p.add_argument("--jmax", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-7,
                   help="relative tolerance of the Fourier quadrature")
    p.add_argument("--plot", action="store_true",
                   help="render PNG figures alongside the table")
    p.add_argument("--fig-dir", default=None)
    add_output_flags(p)
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("interval-ratio",
                       help="norm-ratio bound for the constant on (0, a)")
    p.add_argument("--a", type=float, nargs="+", default=[1.0])
    add_output_flags(p)
    p.set_defaults(func=cmd_interval_ratio)

    p = sub.add_parser("cusp", help="norm scalings on the power-cusp domain")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--h-min", type=float, default=1e-3)
    p.add_argument("--h-max", type=float, default=1e-1)
    p.add_argument("--h-points", type=int, default=9)
    p.add_argument("--tol", type=float, default=1e-10,
                   help="relative tolerance of the norm quadratures")
    p.add_argument("--slope-tol", type=float, default=0.05)
    p.add_argument("--plot", action="store_true")
    p.add_argument("--fig-dir", default=None)
    add_output_flags(p)
    p.set_defaults(func=cmd_cusp)

    p = sub.add_parser("fractal",
                       help="shrinking-interval scales and norm bounds")
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--alpha-mode", choices=("norm", "norm-squared"),
                   default="norm-squared")
    add_output_flags(p)
    p.set_defaults(func=cmd_fractal)

    for name in ("weighted-selfcheck", "selfcheck"):
        p = sub.add_parser(name, help="run the weighted-pair property suites")
        p.add_argument("--seed", type=int, default=1234)
        p.add_argument("--cases", type=int, default=100)
        p.add_argument("--atoms", type=int, default=3)
        p.add_argument("--perturb-n", type=float, default=1.0,
                       help="normalization scale hook (negative control)")
        add_output_flags(p)
        p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConvergenceError, InsufficientDecayError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
