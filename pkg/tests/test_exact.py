from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from clifft.exact import Exact, I_UNIT, ONE, U, U_FLOAT, ZERO, exact_from_float

fractions = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)
upows = st.integers(min_value=-3, max_value=3)


def exacts(upow=upows):
    return st.builds(Exact, fractions, fractions, upow)


def test_zero_normalizes_power():
    assert Exact(0, 0, 5) == ZERO
    assert Exact(0, 0, 5).upow == 0


def test_add_requires_matching_power():
    with pytest.raises(ValueError):
        Exact(1) + Exact(1, 0, 1)
    # zero absorbs into either power
    assert ZERO + Exact(2, 0, 3) == Exact(2, 0, 3)
    assert Exact(2, 0, -1) + ZERO == Exact(2, 0, -1)


@given(exacts(), exacts())
def test_mul_adds_powers(a, b):
    prod = a * b
    if not (a.is_zero or b.is_zero):
        assert prod.upow == a.upow + b.upow
    assert complex(prod) == pytest.approx(complex(a) * complex(b), rel=1e-12, abs=1e-30)


@given(exacts(upow=st.just(0)), exacts(upow=st.just(0)), exacts(upow=st.just(0)))
def test_ring_laws_at_fixed_power(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(exacts())
def test_conjugate_involution(a):
    assert a.conjugate().conjugate() == a
    assert complex(a.conjugate()) == pytest.approx(complex(a).conjugate(), rel=1e-12, abs=1e-30)


def test_u_is_sqrt_pi_over_2():
    assert U_FLOAT == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-15)
    assert float(U * U) == pytest.approx(math.pi / 2.0, rel=1e-15)
    assert U.upow == 1


def test_division_subtracts_powers():
    q = Exact(3, 0, 2) / Exact(2, 0, 1)
    assert q == Exact(Fraction(3, 2), 0, 1)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_powers_of_i():
    assert I_UNIT * I_UNIT == Exact(-1)
    assert I_UNIT**4 == ONE
    with pytest.raises(TypeError):
        I_UNIT ** (-1)  # only nonnegative integer powers are defined


def test_coercion_of_mixed_operands():
    assert Exact(1) + 1 == Exact(2)
    assert Exact(1) * Fraction(1, 3) == Exact(Fraction(1, 3))
    assert Exact(2) * 0.5 == Exact(1)
    assert Exact(1) * 1j == I_UNIT
    assert Exact._coerce("nope") is None


def test_exact_from_float_round_trip():
    x = exact_from_float(0.125, -2.5)
    assert complex(x) == 0.125 - 2.5j
    y = exact_from_float(1.0, 0.0, sqrt_pi_over_2=True)
    assert float(y) == pytest.approx(U_FLOAT)


def test_float_of_imaginary_raises():
    with pytest.raises(ValueError):
        float(I_UNIT)
