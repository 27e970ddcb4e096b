from fractions import Fraction
from math import factorial

import pytest

from solvers.closed_forms import (
    c_coefficient,
    degree0_invariant,
    degree0_X_series,
    degree0_Y_series,
    harmonic_number,
    named_series,
    one_point_invariant,
    one_point_X_closed,
    one_point_Y_closed,
    point_one_point_series,
    sinh_normalized,
    toda_kernel_series,
)
from solvers.series_engine import Series, series_log

ORDER = 12


def test_sinh_coefficients():
    s = sinh_normalized(ORDER)
    assert s.coeffs[:5] == (1, 0, Fraction(1, 24), 0, Fraction(1, 1920))
    assert all(s.coeff(p) == 0 for p in range(1, ORDER + 1, 2))
    assert all(s.coeff(p) > 0 for p in range(0, ORDER + 1, 2))
    assert c_coefficient(4) == Fraction(1, 1920)


def test_c_coefficient_needs_even_index():
    with pytest.raises(ValueError):
        c_coefficient(3)


def test_kernel_is_sinh_squared():
    s = sinh_normalized(ORDER)
    assert toda_kernel_series(ORDER) == s * s


def test_one_point_Y_examples():
    assert one_point_Y_closed(1, 4).coeff(0) == 1
    assert one_point_Y_closed(2, 4).coeff(0) == Fraction(1, 4)
    assert one_point_Y_closed(1, 4).coeff(2) == Fraction(1, 24)
    for d in range(1, 7):
        assert one_point_Y_closed(d, 0).coeff(0) * factorial(d) ** 2 == 1


def test_one_point_X_examples():
    assert one_point_X_closed(1, 2).coeff(0) == -2
    assert one_point_X_closed(2, 2).coeff(0) == Fraction(-3, 4)
    assert one_point_X_closed(1, 2).coeff(2) == 0


def test_degree0_series():
    y0, x0 = degree0_Y_series(ORDER), degree0_X_series(ORDER)
    assert y0.coeff(0) == 1
    assert y0.coeff(2) == Fraction(-1, 24)
    assert y0 * sinh_normalized(ORDER) == Series.one(ORDER)
    assert x0.coeff(0) == 0
    assert x0.coeff(2) == Fraction(1, 12)
    assert all(x0.coeff(p) == 0 for p in range(1, ORDER + 1, 2))
    assert x0 == (y0 * series_log(sinh_normalized(ORDER))).scale(2)


@pytest.mark.parametrize('d', range(0, 6))
def test_closed_forms_satisfy_the_one_point_recursion(d):
    s2 = sinh_normalized(ORDER) ** 2
    y_d = degree0_Y_series(ORDER) if d == 0 else one_point_Y_closed(d, ORDER)
    x_d = degree0_X_series(ORDER) if d == 0 else one_point_X_closed(d, ORDER)
    y_next, x_next = one_point_Y_closed(d + 1, ORDER), one_point_X_closed(d + 1, ORDER)
    assert s2 * y_d == y_next.scale((d + 1) ** 2)
    assert s2 * x_d == x_next.scale((d + 1) ** 2) + y_next.scale(2 * (d + 1))


@pytest.mark.parametrize('d', range(1, 7))
def test_genus0_one_point_invariants(d):
    assert one_point_invariant('y', 0, d) == Fraction(1, factorial(d) ** 2)
    assert one_point_invariant('x', 0, d) == -2 * harmonic_number(d) / factorial(d) ** 2


def test_one_point_invariant_rejects_unknown_kind():
    with pytest.raises(ValueError):
        one_point_invariant('z', 1, 1)


def test_degree0_invariants():
    # <tau_0(x)^2 tau_{2g}(y)>_{g,0} is the lambda^{2g} coefficient of Y_0
    for g in range(4):
        assert degree0_invariant([0, 0], 2 * g, g) == degree0_Y_series(2 * g).coeff(2 * g)
    assert degree0_invariant([1], 0, 1) == Fraction(-1, 24)
    assert degree0_invariant([1, 1], 0, 1) == 2 * Fraction(-1, 24)
    assert degree0_invariant([0, 0], 1, 1) == 0
    assert degree0_invariant([], 0, 1) == Fraction(-1, 24)
    assert degree0_invariant([], 0, 0) == 0


def test_point_series():
    point = point_one_point_series(6)
    for g in range(7):
        assert point.coeff(g) == Fraction(1, 24 ** g * factorial(g))


def test_harmonic_numbers():
    assert harmonic_number(1) == 1
    assert harmonic_number(4) == Fraction(25, 12)
    with pytest.raises(ValueError):
        harmonic_number(0)


def test_named_series():
    assert named_series('Y3', 6) == one_point_Y_closed(3, 6)
    assert named_series('X2', 6) == one_point_X_closed(2, 6)
    assert named_series('kernel', 6) == toda_kernel_series(6)
    with pytest.raises(ValueError):
        named_series('Z1', 6)
