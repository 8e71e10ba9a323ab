from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, settings, strategies as st

from clifft.special import (
    BesselOrder,
    bessel_j,
    bessel_jtilde,
    chebyshev_t,
    chebyshev_t_all,
    chebyshev_u_all,
    double_factorial,
    gegenbauer,
    gegenbauer_all,
    gegenbauer_at_one,
    jtilde_at_zero,
    laguerre,
)


def test_bessel_order_wrapper():
    assert BesselOrder(3).value == 1.5
    assert not BesselOrder(3).is_integer
    assert BesselOrder(4).is_integer
    assert BesselOrder(3).shifted(1).twice_order == 5


def test_jtilde_matches_direct_quotient_above_one():
    t = np.linspace(1.0, 9.0, 40)
    for two in (-1, 1, 3, 4, 5, 8):
        order = BesselOrder(two)
        want = sp.jv(order.value, t) / t**order.value
        got = bessel_jtilde(order, t)
        assert np.allclose(got, want, rtol=1e-12, atol=1e-15)


def test_jtilde_series_continuous_across_switch():
    # the power series (t < 1) and closed forms (t >= 1) must agree
    # to near machine precision at the seam
    for two in (-1, 1, 3, 5, 7):
        below = bessel_jtilde(BesselOrder(two), 1.0 - 1e-9)
        above = bessel_jtilde(BesselOrder(two), 1.0 + 1e-9)
        assert below == pytest.approx(above, rel=1e-7)


def test_jtilde_small_argument_is_stable():
    # naive jv/t^alpha is 0/0 at the origin; the series value is finite
    val = bessel_jtilde(BesselOrder(5), np.array([0.0, 1e-8]))
    limit = jtilde_at_zero(BesselOrder(5))
    assert val[0] == pytest.approx(limit, rel=1e-14)
    assert val[1] == pytest.approx(limit, rel=1e-10)
    assert limit == pytest.approx(1.0 / (2**2.5 * math.gamma(3.5)))


def test_half_integer_closed_forms():
    t = 1.7
    root = math.sqrt(2.0 / math.pi)
    assert bessel_jtilde(BesselOrder(-1), t) == pytest.approx(root * math.cos(t))
    assert bessel_jtilde(BesselOrder(1), t) == pytest.approx(root * math.sin(t) / t)


def test_bessel_j_guards():
    with pytest.raises(ValueError):
        bessel_j(BesselOrder(-3), 1.0)


@settings(max_examples=40)
@given(st.integers(min_value=2, max_value=20), st.floats(-0.99, 0.99))
def test_gegenbauer_three_term_recurrence(n, w):
    lam = 1.5
    c = gegenbauer_all(n, lam, np.array([w]))
    lhs = n * c[n][0]
    rhs = 2 * (n + lam - 1) * w * c[n - 1][0] - (n + 2 * lam - 2) * c[n - 2][0]
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_gegenbauer_against_scipy():
    w = np.linspace(-1.0, 1.0, 21)
    for n in range(0, 7):
        for lam in (0.5, 1.0, 2.5):
            want = sp.eval_gegenbauer(n, lam, w)
            assert np.allclose(gegenbauer(n, lam, w), want, rtol=1e-10, atol=1e-12)


def test_gegenbauer_at_one_is_rising_factorial_ratio():
    # C_n^lam(1) = (2 lam)_n / n!
    assert gegenbauer_at_one(3, 1.0) == pytest.approx(sp.eval_gegenbauer(3, 1.0, 1.0))
    assert gegenbauer_at_one(0, 0.75) == 1.0


def test_chebyshev_values():
    w = np.linspace(-1.0, 1.0, 11)
    t = chebyshev_t_all(5, w)
    u = chebyshev_u_all(4, w)
    theta = np.arccos(w)
    assert np.allclose(t[5], np.cos(5 * theta), atol=1e-12)
    assert np.allclose(u[3] * np.sin(theta), np.sin(4 * theta), atol=1e-12)
    assert chebyshev_t(3, 0.4) == pytest.approx(math.cos(3 * math.acos(0.4)))


def test_laguerre_against_scipy():
    x = np.linspace(0.0, 12.0, 25)
    for j in range(5):
        for alpha in (0.5, 1.0, 2.5):
            want = sp.eval_genlaguerre(j, alpha, x)
            assert np.allclose(laguerre(j, alpha, x), want, rtol=1e-10, atol=1e-12)


def test_double_factorial_values():
    assert [double_factorial(n) for n in (-1, 0, 1, 2, 3, 7, 8)] == [
        1, 1, 1, 2, 3, 105, 384,
    ]
    with pytest.raises(ValueError):
        double_factorial(-2)
