"""Special functions: Bessel, normalized Bessel, Gegenbauer, Laguerre.

Orders of Bessel functions are half-integers or integers; they are carried
around as twice the order (an int) so that exact bookkeeping never touches
floating point.  The normalized function

    jtilde_alpha(t) = t^(-alpha) * J_alpha(t)

is the workhorse: it is entire in t^2, equals 2^(-alpha)/Gamma(alpha+1) at
t = 0, and for half-integer alpha reduces to polynomials in 1/t times
sines and cosines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln as _gammaln
from scipy.special import jv as _jv

__all__ = [
    "BesselOrder",
    "bessel_j",
    "bessel_jtilde",
    "jtilde_at_zero",
    "gegenbauer",
    "gegenbauer_all",
    "gegenbauer_at_one",
    "chebyshev_t",
    "chebyshev_t_all",
    "chebyshev_u_all",
    "laguerre",
    "double_factorial",
    "gamma",
    "log_gamma",
]


@dataclass(frozen=True, order=True)
class BesselOrder:
    """Half-integer or integer order, stored as twice its value."""

    twice_order: int

    @property
    def value(self) -> float:
        return self.twice_order / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice_order % 2 == 0

    def shifted(self, by: int = 1) -> BesselOrder:
        return BesselOrder(self.twice_order + 2 * by)

    def __repr__(self) -> str:
        if self.is_integer:
            return f"BesselOrder({self.twice_order // 2})"
        return f"BesselOrder({self.twice_order}/2)"


def _twice(order) -> int:
    if isinstance(order, BesselOrder):
        return order.twice_order
    if isinstance(order, int):
        return 2 * order
    two = 2 * order
    if isinstance(two, float):
        if not two.is_integer():
            raise ValueError(f"order must be integer or half-integer, got {order!r}")
        return int(two)
    raise TypeError(f"unsupported order type: {order!r}")


def bessel_j(order, x):
    """J_order(x) for order >= -1/2 and x >= 0."""
    two = _twice(order)
    if two < -1:
        raise ValueError(f"unsupported order {two}/2: need order >= -1/2")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("bessel_j requires x >= 0")
    out = _jv(two / 2.0, arr)
    return out if arr.ndim else float(out)


@lru_cache(maxsize=None)
def _jtilde_series_coeffs(twice_order: int, nterms: int = 14) -> np.ndarray:
    """Coefficients c_k of jtilde(t) = sum_k c_k t^(2k)."""
    alpha = twice_order / 2.0
    coeffs = np.empty(nterms)
    for k in range(nterms):
        lg = _gammaln(k + 1) + _gammaln(alpha + k + 1)
        coeffs[k] = (-1.0) ** k * math.exp(-lg - (2 * k + alpha) * math.log(2.0))
    return coeffs


def jtilde_at_zero(order) -> float:
    """jtilde_alpha(0) = 2^(-alpha)/Gamma(alpha+1)."""
    alpha = _twice(order) / 2.0
    return math.exp(-alpha * math.log(2.0) - _gammaln(alpha + 1.0))


_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def _jtilde_trig(twice_order: int, t: np.ndarray) -> np.ndarray | None:
    """Closed forms for half-integer orders -1/2 .. 9/2, valid for t >= 1."""
    st, ct = np.sin(t), np.cos(t)
    if twice_order == -1:
        val = ct
    elif twice_order == 1:
        val = st / t
    elif twice_order == 3:
        val = (st - t * ct) / t**3
    elif twice_order == 5:
        val = ((3.0 - t * t) * st - 3.0 * t * ct) / t**5
    elif twice_order == 7:
        val = ((15.0 - 6.0 * t * t) * st - (15.0 * t - t**3) * ct) / t**7
    elif twice_order == 9:
        t2 = t * t
        val = ((105.0 - 45.0 * t2 + t2 * t2) * st - (105.0 * t - 10.0 * t**3) * ct) / t**9
    else:
        return None
    return _SQRT_2_OVER_PI * val


def bessel_jtilde(order, t):
    """jtilde_alpha(t) = t^(-alpha) J_alpha(t), alpha >= -1/2, t >= 0.

    Power series below t = 1 (no cancellation), closed trigonometric
    forms for half-integer orders above, generic Bessel otherwise.
    """
    two = _twice(order)
    if two < -1:
        raise ValueError(f"unsupported order {two}/2: need order >= -1/2")
    arr = np.asarray(t, dtype=float)
    scalar_in = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < 0):
        raise ValueError("bessel_jtilde requires t >= 0")
    out = np.empty_like(arr)

    small = arr < 1.0
    if np.any(small):
        coeffs = _jtilde_series_coeffs(two)
        ts = arr[small]
        t2 = ts * ts
        acc = np.full_like(ts, coeffs[-1])
        for c in coeffs[-2::-1]:
            acc = acc * t2 + c
        out[small] = acc
    big = ~small
    if np.any(big):
        tb = arr[big]
        trig = _jtilde_trig(two, tb)
        if trig is None:
            alpha = two / 2.0
            trig = _jv(alpha, tb) * tb ** (-alpha)
        out[big] = trig
    return float(out[0]) if scalar_in else out


def gegenbauer_all(n: int, lam: float, w):
    """C_0^lam(w) .. C_n^lam(w) by the three-term recurrence, lam > 0."""
    if lam <= 0:
        raise ValueError(f"gegenbauer parameter must be positive, got {lam}")
    if n < 0:
        raise ValueError("degree must be >= 0")
    arr = np.asarray(w, dtype=float)
    vals = np.empty((n + 1,) + arr.shape)
    vals[0] = 1.0
    if n >= 1:
        vals[1] = 2.0 * lam * arr
    for j in range(2, n + 1):
        vals[j] = (2.0 * arr * (j + lam - 1.0) * vals[j - 1] - (j + 2.0 * lam - 2.0) * vals[j - 2]) / j
    return vals


def gegenbauer(n: int, lam: float, w):
    out = gegenbauer_all(n, lam, w)[n]
    return float(out) if np.asarray(w).ndim == 0 else out


def gegenbauer_at_one(n: int, lam: float) -> float:
    """C_n^lam(1) = (2 lam)_n / n!, computed in log space."""
    if n == 0:
        return 1.0
    return math.exp(_gammaln(2 * lam + n) - _gammaln(2 * lam) - _gammaln(n + 1))


def chebyshev_t_all(n: int, w):
    """T_0(w) .. T_n(w), first kind."""
    arr = np.asarray(w, dtype=float)
    vals = np.empty((n + 1,) + arr.shape)
    vals[0] = 1.0
    if n >= 1:
        vals[1] = arr
    for j in range(2, n + 1):
        vals[j] = 2.0 * arr * vals[j - 1] - vals[j - 2]
    return vals


def chebyshev_t(n: int, w):
    out = chebyshev_t_all(n, w)[n]
    return float(out) if np.asarray(w).ndim == 0 else out


def chebyshev_u_all(n: int, w):
    """U_0(w) .. U_n(w), second kind (= C_n^1)."""
    arr = np.asarray(w, dtype=float)
    vals = np.empty((n + 1,) + arr.shape)
    vals[0] = 1.0
    if n >= 1:
        vals[1] = 2.0 * arr
    for j in range(2, n + 1):
        vals[j] = 2.0 * arr * vals[j - 1] - vals[j - 2]
    return vals


def laguerre(j: int, alpha, x):
    """Generalized Laguerre polynomial L_j^alpha(x)."""
    if j < 0:
        raise ValueError("degree must be >= 0")
    arr = np.asarray(x, dtype=float)
    alpha = float(alpha)
    prev = np.ones_like(arr)
    if j == 0:
        return float(prev) if arr.ndim == 0 else prev
    cur = 1.0 + alpha - arr
    for n in range(2, j + 1):
        prev, cur = cur, ((2.0 * n - 1.0 + alpha - arr) * cur - (n - 1.0 + alpha) * prev) / n
    return float(cur) if arr.ndim == 0 else cur


@lru_cache(maxsize=None)
def double_factorial(n: int) -> int:
    """n!! for n >= -1, with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    if n <= 0:
        return 1
    return n * double_factorial(n - 2)


def log_gamma(x: float) -> float:
    if x <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return float(_gammaln(x))


def gamma(x: float) -> float:
    return math.exp(log_gamma(x))
