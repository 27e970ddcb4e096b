"""
Closed-form lambda-series for the 1-point invariants of the sphere.

S = sinh(lambda/2)/(lambda/2) is the real form of sin(i lambda/2)/(i lambda/2);
every series here is built from S with exact rational coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .series_engine import Series, series_exp, series_log, series_pow_int


@lru_cache(maxsize=None)
def harmonic_number(d: int) -> Fraction:
    """H(d) = 1 + 1/2 + ... + 1/d"""
    if d < 1:
        raise ValueError(f"harmonic numbers start at d=1, got {d}")
    if d == 1:
        return Fraction(1)
    return harmonic_number(d - 1) + Fraction(1, d)


def c_coefficient(two_k: int) -> Fraction:
    """c_{2k} = 1/(2^{2k} (2k+1)!)"""
    if two_k < 0 or two_k % 2:
        raise ValueError(f"c is indexed by even non-negative integers, got {two_k}")
    return Fraction(1, 2 ** two_k * factorial(two_k + 1))


@lru_cache(maxsize=None)
def sinh_normalized(order: int) -> Series:
    """S = sum_k c_{2k} lambda^{2k}, odd coefficients zero"""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return Series.from_terms({two_k: c_coefficient(two_k) for two_k in range(0, order + 1, 2)}, order)


@lru_cache(maxsize=None)
def toda_kernel_series(order: int) -> Series:
    """
    sum_{k>0} 2 lambda^{2k-2}/(2k)!, the factor the rewritten Toda exponent
    contributes to one-point extraction. Equal to S^2.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return Series.from_terms(
        {2 * k - 2: Fraction(2, factorial(2 * k)) for k in range(1, order // 2 + 2)},
        order,
    )


def one_point_Y_closed(d: int, order: int) -> Series:
    """Y_d = S^{2d-1} / (d!)^2"""
    if d < 1:
        raise ValueError(f"closed form Y_d needs d >= 1, got {d}")
    s = sinh_normalized(order)
    return series_pow_int(s, 2 * d - 1).scale(Fraction(1, factorial(d) ** 2))


def one_point_X_closed(d: int, order: int) -> Series:
    """X_d = 2 S^{2d-1} (log S - H(d)) / (d!)^2"""
    if d < 1:
        raise ValueError(f"closed form X_d needs d >= 1, got {d}")
    s = sinh_normalized(order)
    bracket = series_log(s) - harmonic_number(d)
    return (series_pow_int(s, 2 * d - 1) * bracket).scale(Fraction(2, factorial(d) ** 2))


def degree0_Y_series(order: int) -> Series:
    """Y_0 = S^{-1} = 1 + sum_g lambda^{2g} <tau_0(x)^2 tau_{2g}(y)>_{g,0}"""
    return series_pow_int(sinh_normalized(order), -1)


def degree0_X_series(order: int) -> Series:
    """X_0 = 2 S^{-1} log S"""
    s = sinh_normalized(order)
    return (series_pow_int(s, -1) * series_log(s)).scale(2)


def point_one_point_series(order: int) -> Series:
    """exp(lambda/24): the 1-point series of the point target, lambda^g <tau_{3g-2}>_g"""
    return series_exp(Series.variable(order).scale(Fraction(1, 24)))


def _multinomial(total: int, parts: Sequence[int]) -> int:
    if sum(parts) != total or any(p < 0 for p in parts):
        return 0
    value = factorial(total)
    for p in parts:
        value //= factorial(p)
    return value


def degree0_invariant(x_indices: Sequence[int], b: int, g: int) -> Fraction:
    """
    <tau_{a_1}(x) ... tau_{a_n}(x) tau_b(y)>_{g,0} by the degree-0 rule
    multinomial(2g-2+n; a_1..a_n, b) * <tau_{2g-2}(y)>_{g,0}.

    Zero off the dimension constraint sum(a) + b = 2g - 2 + n.
    """
    if g < 0 or b < 0 or any(a < 0 for a in x_indices):
        raise ValueError("genus and descendent indices must be non-negative")
    total = 2 * g - 2 + len(x_indices)
    if total < 0 or sum(x_indices) + b != total:
        return Fraction(0)
    base = degree0_Y_series(2 * g).coeff(2 * g)
    return _multinomial(total, list(x_indices) + [b]) * base


def one_point_invariant(kind: str, g: int, d: int) -> Fraction:
    """
    Read a single 1-point invariant off the closed forms.

    Args:
        kind (str): 'y' for <tau_{2g+2d-2}(y)>_{g,d}, 'x' for <tau_{2g+2d-1}(x)>_{g,d}
        g (int): genus
        d (int): degree; d = 0 reads the tau_0(x)^2-padded degree-0 series

    Returns:
        Fraction: the invariant
    """
    order = 2 * g
    if kind == 'y':
        series = degree0_Y_series(order) if d == 0 else one_point_Y_closed(d, order)
    elif kind == 'x':
        series = degree0_X_series(order) if d == 0 else one_point_X_closed(d, order)
    else:
        raise ValueError(f"unknown 1-point kind: {kind!r} (expected 'x' or 'y')")
    return series.coeff(order)


def named_series(name: str, order: int) -> Series:
    """Resolve the CLI series names: sinh, kernel, point, Y0, X0, Y<d>, X<d>"""
    fixed = {
        'sinh': sinh_normalized,
        'kernel': toda_kernel_series,
        'point': point_one_point_series,
        'Y0': degree0_Y_series,
        'X0': degree0_X_series,
    }
    if name in fixed:
        return fixed[name](order)
    if len(name) > 1 and name[0] in 'YX' and name[1:].isdigit():
        d = int(name[1:])
        builder = one_point_Y_closed if name[0] == 'Y' else one_point_X_closed
        return builder(d, order)
    raise ValueError(f"unknown series name: {name!r}")
