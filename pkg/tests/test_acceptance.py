"""Acceptance gate: one test per published criterion, each printing a
single PASS/FAIL line with its runtime.  Tolerances and time caps are
part of the criteria and are asserted, never loosened."""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from clifft.basis import harmonic_dimension, monogenic_basis, psi
from clifft.basis import dirac as dirac_op
from clifft.engine import (
    closed_form_eigenvalue,
    closed_form_eigenvalue_exact,
    default_scheme,
    hankel_laguerre_residual,
    inversion_composition_residual,
    l2_bound_scan,
    verify_eigen,
    verify_inversion,
)
from clifft.exact import ONE
from clifft.kernels import (
    KernelId,
    build_kernel,
    pde_residual,
    verify_recursion,
    verify_structural_identities,
)
from clifft.series import (
    check_cf_constraint,
    eigenvalues_from_coefficients,
    eval_series,
    inverse_coefficients,
    series_coefficients,
    truncation_bound,
)
from clifft.special import BesselOrder, bessel_j, gegenbauer_all

_T0 = {}


def _report(num: int, name: str, ok: bool, t0: float, cap: float, detail: str = ""):
    elapsed = time.time() - t0
    status = "PASS" if ok and elapsed < cap else "FAIL"
    tail = f" [{detail}]" if detail else ""
    print(f"criterion {num:02d} ({name}): {status} ({elapsed:.2f}s / cap {cap:.0f}s){tail}")
    assert ok, f"criterion {num:02d} failed: {detail}"
    assert elapsed < cap, f"criterion {num:02d} over time budget: {elapsed:.2f}s >= {cap}s"


def test_criterion_01_recursion_exactness():
    t0 = time.time()
    failures = []
    for m in (2, 4, 6, 8, 3, 5, 7, 9):
        for i in range(m - 1):
            rep = verify_recursion(m, i)
            if not rep.ok:
                failures.append((m, i, rep.first_mismatch))
    _report(1, "recursion exactness", not failures, t0, 1.0,
            str(failures[:2]) if failures else "all dimensions 2..9, exact")


def test_criterion_02_structural_identities():
    t0 = time.time()
    failures = []
    for m in (4, 6, 8):
        rep = verify_structural_identities(m)
        if not rep.ok:
            failures.append((m, rep.checks))
    _report(2, "structural identities", not failures, t0, 1.0,
            str(failures[:1]) if failures else "dimensions 4, 6, 8, exact")


def test_criterion_03_series_agreement():
    t0 = time.time()
    rng = np.random.default_rng(77)
    worst = 0.0
    for m in range(2, 7):
        for i in range(m - 1):
            for sign in ("plus", "minus"):
                kid = KernelId(m, i, sign)
                expr = build_kernel(kid)
                coeffs = series_coefficients(kid)
                # 500 sample pairs with |x|, |y| <= 3, i.e. z <= 9
                z = rng.uniform(0.0, 9.0, 500)
                w = rng.uniform(-1.0, 1.0, 500)
                n = truncation_bound(coeffs, 9.0, 1e-9)
                a_ser, b_ser = eval_series(coeffs, z, w, n)
                scalar, biv = expr.profiles(z * w, z * np.sqrt(1.0 - w * w))
                worst = max(
                    worst,
                    float(np.max(np.abs(scalar - a_ser))),
                    float(np.max(np.abs(biv - b_ser))),
                )
    _report(3, "series agreement", worst < 1e-8, t0, 30.0, f"worst delta {worst:.2e}")


def test_criterion_04_pde_system():
    t0 = time.time()
    worst = 0.0
    for m in range(2, 7):
        for i in range(m - 1):
            kid = KernelId(m, i)
            rng = np.random.default_rng(5 * m + i)
            for _ in range(200):
                x = rng.uniform(-1.6, 1.6, m)
                y = rng.uniform(-1.6, 1.6, m)
                worst = max(worst, pde_residual(kid, x, y))
    _report(4, "pde system", worst < 1e-6, t0, 60.0, f"worst residual {worst:.2e}")


def test_criterion_05_eigenvalues():
    t0 = time.time()
    worst_grid = 0.0
    for m in (2, 3, 4):
        records = verify_eigen(m)
        worst_grid = max(worst_grid, max(r.abs_error for r in records))
    worst_radial = 0.0
    for m in (5, 6, 7, 8, 9):
        records = verify_eigen(m)
        worst_radial = max(worst_radial, max(r.abs_error for r in records))
    # closed-form spot values, both radial parities p = 0, 1
    spots = True
    for p in (0, 1):
        sgn = (-1) ** p
        spots &= closed_form_eigenvalue(4, 0, 2, "2p", p) == sgn * (1 / 3)
        spots &= closed_form_eigenvalue(2, 0, 0, "2p", p) == -sgn
        spots &= closed_form_eigenvalue(3, 0, 0, "2p", p) == sgn * 1j
    ok = worst_grid < 1e-6 and worst_radial < 1e-8 and spots
    _report(
        5, "eigenvalues", ok, t0, 300.0,
        f"grid {worst_grid:.2e}, radial {worst_radial:.2e}, spots {spots}",
    )


def test_criterion_06_inversion():
    t0 = time.time()
    exact_ok = True
    for m in (2, 4, 6, 8):
        rep = verify_inversion(m, k_max=100)
        exact_ok = exact_ok and rep.exact_ok
    numeric = max(inversion_composition_residual(2, 0), inversion_composition_residual(4, 0))
    ok = exact_ok and numeric < 1e-5
    _report(
        6, "inversion", ok, t0, 120.0,
        f"exact {exact_ok}, composition residual {numeric:.2e}",
    )


def test_criterion_07_l2_pattern():
    t0 = time.time()
    ok = True
    detail = []
    for m in range(2, 10):
        for i in range(m - 1):
            rep = l2_bound_scan(m, i, 200)
            expect = 2 * i <= m - 2
            if rep.bounded != expect:
                ok = False
                detail.append(("pattern", m, i))
            if not expect and rep.first_exceed_k is None:
                ok = False
                detail.append(("counterexample", m, i))
            if m % 2 == 0 and 2 * i == m - 2 and rep.sup_magnitude != 1:
                ok = False
                detail.append(("unimodular", m, i))
    _report(7, "boundedness pattern", ok, t0, 1.0,
            str(detail[:3]) if detail else "bounded iff 2i <= m-2, k <= 200")


def test_criterion_08_constraint():
    t0 = time.time()
    worst = 0.0
    ok = True
    for m in range(2, 10):
        for i in range(m - 1):
            for sign in ("plus", "minus"):
                rep = check_cf_constraint(
                    series_coefficients(KernelId(m, i, sign)), k_max=50, tol=1e-10
                )
                ok = ok and rep.passed
                worst = max(worst, rep.max_residual)
    _report(8, "series constraint", ok, t0, 1.0, f"worst residual {worst:.2e}")


def test_criterion_09_special_function_suite():
    t0 = time.time()
    w = np.linspace(-0.95, 0.95, 31)
    worst = 0.0
    for lam in (0.5, 1.0, 2.0, 3.5):
        c0 = gegenbauer_all(12, lam, w)
        c1 = gegenbauer_all(12, lam + 1.0, w)
        for n in range(2, 12):
            res = ((lam + n) / lam) * c0[n] - c1[n] + c1[n - 2]
            worst = max(worst, float(np.max(np.abs(res))))
            res = (
                w * c1[n - 1]
                - (n / (2 * (n + lam))) * c1[n]
                - ((n + 2 * lam) / (2 * (n + lam))) * c1[n - 2]
            )
            worst = max(worst, float(np.max(np.abs(res))))
    z = np.linspace(0.1, 20.0, 40)
    for two in (1, 2, 3, 5, 8):
        nu = BesselOrder(two)
        res = bessel_j(nu, z) - (z / (2 * nu.value)) * (
            bessel_j(nu.shifted(1), z) + bessel_j(nu.shifted(-1), z)
        )
        worst = max(worst, float(np.max(np.abs(res))))
    hl = 0.0
    for m in (2, 3, 4, 5, 6):
        for k in (0, 1, 2):
            for j in (0, 1, 3):
                hl = max(hl, hankel_laguerre_residual(m, k, j, [0.4, 1.1, 2.0, 3.1]))
    ok = worst < 1e-10 and hl < 1e-10
    _report(
        9, "special function suite", ok, t0, 5.0,
        f"recurrences {worst:.2e}, hankel-laguerre {hl:.2e}",
    )


def test_criterion_10_monogenic_basis():
    t0 = time.time()
    dirac_ok = True
    for m in range(2, 7):
        for k in range(0, 5):
            for mono in monogenic_basis(m, k):
                if not dirac_op(mono.poly).is_zero():
                    dirac_ok = False
    worst_cross = 0.0
    for m in (2, 3, 4):
        scheme = default_scheme(m)
        fs = [
            psi(j, k, ell, m)
            for j in (0, 1, 2)
            for k in (0, 1, 2)
            for ell in range(1, min(2, harmonic_dimension(m, k)) + 1)
        ]
        n = len(fs)
        gram = np.zeros((n, n), dtype=complex)
        for pts, wts in scheme.chunks(200_000):
            vals = [f.values(pts) for f in fs]
            for a in range(n):
                for b in range(a + 1):
                    acc = 0.0
                    for blade, arr in vals[a].items():
                        other = vals[b].get(blade)
                        if other is not None:
                            acc += np.sum(wts * arr * other)
                    gram[a, b] += acc
        for a in range(n):
            for b in range(a):
                cross = abs(gram[a, b]) / np.sqrt(abs(gram[a, a]) * abs(gram[b, b]))
                worst_cross = max(worst_cross, cross)
    ok = dirac_ok and worst_cross < 1e-8
    _report(
        10, "monogenic basis", ok, t0, 60.0,
        f"dirac exact {dirac_ok}, worst cross term {worst_cross:.2e}",
    )
