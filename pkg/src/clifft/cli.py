"""Command line interface.

Subcommands:

* kernel-eval: tabulate kernel profiles on (s, t) points, optionally
  against the series representation.
* verify: run a verification suite and emit a JSON report; the exit
  status is 0 exactly when every check passed.
* eigentable: tabulate closed-form eigenvalues.
* coeffs: tabulate series coefficient streams, optionally with the
  inverse streams and the bridged products.

All numeric output uses repr-faithful 17-digit formatting so tables are
reproducible bit for bit.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .basis import psi
from .engine import (
    inversion_composition_residual,
    l2_bound_scan,
    closed_form_eigenvalue,
    verify_diff_relations,
    verify_eigen,
    verify_inversion,
)
from .kernels import (
    KernelId,
    build_kernel,
    pde_residual,
    verify_recursion,
    verify_structural_identities,
)
from .series import (
    check_cf_constraint,
    classical_coefficients,
    coefficient_rows,
    eval_series,
    series_coefficients,
    truncation_bound,
)

__all__ = ["RunConfig", "main"]

FMT = "{:.17g}"


def _fmt(x: float) -> str:
    return FMT.format(float(x))


@dataclass(frozen=True)
class RunConfig:
    """Execution options shared by the verification suites."""

    parallel: bool = False
    threads: int = 1

    @staticmethod
    def from_args(args: argparse.Namespace) -> "RunConfig":
        parallel = bool(getattr(args, "parallel", False))
        if not parallel:
            return RunConfig(parallel=False, threads=1)
        env = os.environ.get("CLIFFT_THREADS")
        threads = int(env) if env else min(8, os.cpu_count() or 1)
        return RunConfig(parallel=True, threads=max(1, threads))

    def map(self, fn, items):
        items = list(items)
        if not self.parallel or self.threads <= 1 or len(items) <= 1:
            return [fn(it) for it in items]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(fn, items))


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _parse_floats(text: str, opt: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise SystemExit(f"error: {opt} expects comma-separated numbers: {exc}")


# ---------------------------------------------------------------------------
# kernel-eval


def _cmd_kernel_eval(args: argparse.Namespace) -> int:
    kid = KernelId(args.m, args.i, args.sign)
    expr = build_kernel(kid)
    s_vals = _parse_floats(args.s, "--s")
    t_vals = _parse_floats(args.t, "--t")
    if any(t < 0 for t in t_vals):
        raise SystemExit("error: --t values must be >= 0")
    pairs = [(s, t) for s in s_vals for t in t_vals]
    s_arr = np.array([p[0] for p in pairs])
    t_arr = np.array([p[1] for p in pairs])
    scalar, biv = expr.profiles(s_arr, t_arr)

    header = ["s", "t", "scalar_re", "scalar_im", "g_re", "g_im"]
    extra = None
    if args.compare_series:
        coeffs = series_coefficients(kid)
        z = np.hypot(s_arr, t_arr)
        w = np.where(z > 0, s_arr / np.maximum(z, 1e-300), 0.0)
        n_terms = truncation_bound(coeffs, float(np.max(z)), args.eps)
        a_ser, b_ser = eval_series(coeffs, z, w, n_terms)
        extra = (np.abs(scalar - a_ser), np.abs(biv - b_ser))
        header += ["scalar_delta", "g_delta"]

    with _open_out(args.output) as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for idx, (s, t) in enumerate(pairs):
            row = [
                _fmt(s), _fmt(t),
                _fmt(scalar[idx].real), _fmt(scalar[idx].imag),
                _fmt(biv[idx].real), _fmt(biv[idx].imag),
            ]
            if extra is not None:
                row += [_fmt(extra[0][idx]), _fmt(extra[1][idx])]
            writer.writerow(row)
    return 0


# ---------------------------------------------------------------------------
# verify suites


def _suite_recursion(ms: list[int], config: RunConfig) -> list[dict]:
    units = [(m, i) for m in ms for i in range(m - 1) if m + 2 <= 12]

    def run(unit):
        m, i = unit
        rep = verify_recursion(m, i)
        return {"m": m, "i": i, "passed": rep.ok, "checks": rep.checks}

    return config.map(run, units)


def _suite_structural(ms: list[int], config: RunConfig) -> list[dict]:
    units = [m for m in ms if m % 2 == 0 and m >= 4]

    def run(m):
        rep = verify_structural_identities(m)
        return {"m": m, "passed": rep.ok, "checks": rep.checks}

    return config.map(run, units)


def _series_unit(unit) -> dict:
    m, i, sign = unit
    kid = KernelId(m, i, sign)
    expr = build_kernel(kid)
    coeffs = series_coefficients(kid)
    rng = np.random.default_rng(97)
    z = rng.uniform(0.0, 9.0, 160)
    w = rng.uniform(-1.0, 1.0, 160)
    s = z * w
    t = z * np.sqrt(1.0 - w * w)
    scalar, biv = expr.profiles(s, t)
    a_ser, b_ser = eval_series(coeffs, z, w, truncation_bound(coeffs, 9.0, 1e-9))
    delta = max(float(np.max(np.abs(scalar - a_ser))), float(np.max(np.abs(biv - b_ser))))
    return {"m": m, "i": i, "sign": sign, "max_delta": delta, "passed": delta < 1e-8}


def _suite_series(ms: list[int], config: RunConfig) -> list[dict]:
    units = [(m, i, sign) for m in ms for i in range(m - 1) for sign in ("plus", "minus")]
    return config.map(_series_unit, units)


def _pde_unit(unit) -> dict:
    m, i, n_points = unit
    kid = KernelId(m, i)
    rng = np.random.default_rng(53 + 7 * m + i)
    worst = 0.0
    for _ in range(n_points):
        x = rng.uniform(-1.6, 1.6, m)
        y = rng.uniform(-1.6, 1.6, m)
        worst = max(worst, pde_residual(kid, x, y))
    return {"m": m, "i": i, "max_residual": worst, "passed": worst < 1e-6}


def _suite_pde(ms: list[int], config: RunConfig) -> list[dict]:
    units = [(m, i, 50) for m in ms if m <= 6 for i in range(m - 1)]
    return config.map(_pde_unit, units)


def _suite_eigen(ms: list[int], config: RunConfig) -> list[dict]:
    def run(m):
        records = verify_eigen(m)
        tol = 1e-6 if m <= 4 else 1e-8
        worst = max(r.abs_error for r in records)
        return {"m": m, "records": len(records), "max_abs_error": worst,
                "tolerance": tol, "passed": worst < tol}

    return config.map(run, ms)


def _suite_inversion(ms: list[int], config: RunConfig) -> list[dict]:
    def run(m):
        rep = verify_inversion(m, k_max=100)
        out = {"m": m, "k_max": 100, "exact_products_one": rep.exact_ok,
               "passed": rep.exact_ok}
        if m >= 3:
            residual = inversion_composition_residual(m, 0)
            out["composition_residual"] = residual
            out["passed"] = out["passed"] and residual < 1e-5
        return out

    return config.map(run, [m for m in ms if m % 2 == 0])


def _suite_diff(ms: list[int], config: RunConfig) -> list[dict]:
    units = [(m, i, k) for m in ms if m <= 3 for i in range(m - 1) for k in (0, 1)]

    def run(unit):
        m, i, k = unit
        res = verify_diff_relations(KernelId(m, i), psi(0, k, 1, m))
        return {"m": m, "i": i, "k": k, "max_residual": res, "passed": res < 1e-5}

    return config.map(run, units)


def _suite_l2(ms: list[int], config: RunConfig) -> list[dict]:
    units = [(m, i) for m in ms for i in range(m - 1)]

    def run(unit):
        m, i = unit
        rep = l2_bound_scan(m, i, 200)
        expect_bounded = 2 * i <= m - 2
        ok = rep.bounded == expect_bounded
        if m % 2 == 0 and 2 * i == m - 2:
            ok = ok and rep.sup_magnitude == 1
        return {"m": m, "i": i, "bounded": rep.bounded,
                "first_exceed_k": rep.first_exceed_k,
                "sup": float(rep.sup_magnitude), "passed": ok}

    return config.map(run, units)


def _suite_constraint(ms: list[int], config: RunConfig) -> list[dict]:
    units = [(m, i, sign) for m in ms for i in range(m - 1) for sign in ("plus", "minus")]

    def run(unit):
        m, i, sign = unit
        rep = check_cf_constraint(series_coefficients(KernelId(m, i, sign)))
        return {"m": m, "i": i, "sign": sign, "max_residual": rep.max_residual,
                "passed": rep.passed}

    rows = config.map(run, units)
    for m in ms:
        if m < 3 or m % 2 == 0:
            continue
        rep = check_cf_constraint(classical_coefficients(m))
        rows.append({"m": m, "stream": "classical", "satisfied": rep.passed,
                     "passed": rep.passed == (m % 4 == 1)})
    return rows


_SUITES = {
    "recursion": (_suite_recursion, (2, 3, 4, 5, 6, 7, 8, 9)),
    "structural": (_suite_structural, (4, 6, 8)),
    "series": (_suite_series, (2, 3, 4, 5)),
    "pde": (_suite_pde, (2, 3, 4, 5, 6)),
    "eigen": (_suite_eigen, (2, 3, 5, 6, 7)),
    "inversion": (_suite_inversion, (2, 4, 6, 8)),
    "diff": (_suite_diff, (2, 3)),
    "l2": (_suite_l2, (2, 3, 4, 5, 6, 7, 8, 9)),
    "constraint": (_suite_constraint, (2, 3, 4, 5, 6, 7, 8, 9)),
}


def _cmd_verify(args: argparse.Namespace) -> int:
    fn, default_ms = _SUITES[args.suite]
    ms = sorted(set(args.m)) if args.m else list(default_ms)
    config = RunConfig.from_args(args)
    checks = fn(ms, config)
    passed = all(c["passed"] for c in checks)
    report = {
        "suite": args.suite,
        "dimensions": ms,
        "threads": config.threads,
        "passed": passed,
        "checks": checks,
    }
    with _open_out(args.output) as fh:
        json.dump(report, fh, indent=2, default=str)
        fh.write("\n")
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# eigentable / coeffs


def _cmd_eigentable(args: argparse.Namespace) -> int:
    m = args.m
    i_list = sorted(set(args.i)) if args.i else list(range(m - 1))
    for i in i_list:
        if not 0 <= i <= m - 2:
            raise SystemExit(f"error: index i={i} out of range 0..{m - 2}")
    with _open_out(args.output) as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "i", "k", "parity", "re", "im", "factor"])
        for i in i_list:
            for k in range(args.k_max + 1):
                for parity in ("2p", "2p+1"):
                    val = closed_form_eigenvalue(m, i, k, parity)
                    writer.writerow(
                        [m, i, k, parity, _fmt(val.real), _fmt(val.imag), "(-1)^p"]
                    )
    return 0


def _cmd_coeffs(args: argparse.Namespace) -> int:
    kid = KernelId(args.m, args.i, args.sign)
    rows = coefficient_rows(series_coefficients(kid), args.k_max, args.inverse)
    header = ["k", "alpha_re", "alpha_im", "beta_re", "beta_im"]
    if args.inverse:
        header += [
            "inv_alpha_re", "inv_alpha_im", "inv_beta_re", "inv_beta_im",
            "prod_even_re", "prod_even_im", "prod_odd_re", "prod_odd_im",
        ]
    with _open_out(args.output) as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            out = [row["k"],
                   _fmt(row["alpha"].real), _fmt(row["alpha"].imag),
                   _fmt(row["beta"].real), _fmt(row["beta"].imag)]
            if args.inverse:
                out += [
                    _fmt(row["inv_alpha"].real), _fmt(row["inv_alpha"].imag),
                    _fmt(row["inv_beta"].real), _fmt(row["inv_beta"].imag),
                    _fmt(row["prod_even"].real), _fmt(row["prod_even"].imag),
                    _fmt(row["prod_odd"].real), _fmt(row["prod_odd"].imag),
                ]
            writer.writerow(out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clifft",
        description="Clifford-Fourier transform kernels: tables and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel-eval", help="tabulate kernel profiles at (s, t) points")
    p.add_argument("--m", type=int, required=True, help="dimension (>= 2)")
    p.add_argument("--i", type=int, required=True, help="kernel index, 0 <= i <= m-2")
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")
    p.add_argument("--s", required=True, help="comma-separated s values")
    p.add_argument("--t", required=True, help="comma-separated t values (>= 0)")
    p.add_argument("--compare-series", action="store_true",
                   help="add series-representation delta columns")
    p.add_argument("--eps", type=float, default=1e-9,
                   help="series truncation target (with --compare-series)")
    p.add_argument("--output", default="-", help="output file, - for stdout")
    p.set_defaults(func=_cmd_kernel_eval)

    p = sub.add_parser("verify", help="run a verification suite, emit a JSON report")
    p.add_argument("--suite", required=True, choices=sorted(_SUITES))
    p.add_argument("--m", type=int, action="append",
                   help="restrict to this dimension (repeatable)")
    p.add_argument("--parallel", action="store_true",
                   help="run independent checks on a thread pool "
                        "(size from CLIFFT_THREADS)")
    p.add_argument("--output", default="-", help="output file, - for stdout")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eigentable", help="closed-form eigenvalue table (CSV)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, action="append",
                   help="kernel index (repeatable, default: all)")
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--output", default="-")
    p.set_defaults(func=_cmd_eigentable)

    p = sub.add_parser("coeffs", help="series coefficient table (CSV)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--inverse", action="store_true",
                   help="add inverse streams and bridged product columns")
    p.add_argument("--output", default="-")
    p.set_defaults(func=_cmd_coeffs)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
