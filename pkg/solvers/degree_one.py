"""
Degree 1 descendents <tau_{a_1}(y) ... tau_{a_n}(y)>_{g,1} of the sphere.

The product rule gives prod c_{a_i} when every a_i is even and sum a_i = 2g;
the invariant vanishes otherwise. degree1_generating_check expands

    exp(sum_k c_{2k} y_{2k} lambda^{2k}) = lambda^2 L(y)

as polynomials and compares them monomial by monomial.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import sympy as sp

from .closed_forms import (
    c_coefficient,
    degree0_Y_series,
    one_point_Y_closed,
    sinh_normalized,
    toda_kernel_series,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DescendentKey:
    """Multiset of descendent indices, kept sorted"""

    indices: Tuple[int, ...] = ()

    def __init__(self, indices: Iterable[int] = ()):
        values = tuple(sorted(int(a) for a in indices))
        if any(a < 0 for a in values):
            raise ValueError(f"descendent indices must be non-negative, got {values}")
        object.__setattr__(self, 'indices', values)

    @classmethod
    def parse(cls, text: str) -> 'DescendentKey':
        """'2,2,4' -> (2, 2, 4); the empty string is the empty key"""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(int(part) for part in text.split(','))
        except ValueError as e:
            raise ValueError(f"could not read descendent key {text!r}: {e}")

    @property
    def genus(self) -> Optional[int]:
        """sum(a_i)/2 when the sum is even"""
        total = sum(self.indices)
        return total // 2 if total % 2 == 0 else None

    def union(self, other: 'DescendentKey') -> 'DescendentKey':
        return DescendentKey(self.indices + other.indices)

    def multiplicities(self) -> Dict[int, int]:
        return dict(Counter(self.indices))

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.indices)


def degree1_invariant(key: DescendentKey, genus: Optional[int] = None) -> Fraction:
    """
    Args:
        key (DescendentKey): the y-insertions tau_{a_1}(y) ... tau_{a_n}(y)
        genus (Optional[int]): genus to read the invariant at; defaults to sum(a_i)/2

    Returns:
        Fraction: prod c_{a_i}, or 0 when some a_i is odd or sum(a_i) != 2g
    """
    if genus is None:
        genus = key.genus
        if genus is None:
            return Fraction(0)
    if sum(key.indices) != 2 * genus:
        return Fraction(0)
    value = Fraction(1)
    for a in key.indices:
        if a % 2:
            return Fraction(0)
        value *= c_coefficient(a)
    return value


@dataclass
class ResidualReport:
    """Coefficientwise difference of two expansions; empty residual means pass"""

    residual: Dict[str, Fraction] = field(default_factory=dict)
    compared: int = 0

    @property
    def passed(self) -> bool:
        return not self.residual

    def first_offending(self) -> Optional[Tuple[str, Fraction]]:
        if not self.residual:
            return None
        cell = sorted(self.residual)[0]
        return cell, self.residual[cell]


def _to_fraction(value) -> Fraction:
    rational = sp.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _monomials(num_vars: int, max_insertions: int, weights: List[int], weight_bound: int
               ) -> Iterator[Tuple[int, ...]]:
    """Exponent vectors with total degree <= max_insertions and weighted degree <= weight_bound"""
    def extend(prefix, index, degree_left, weight_left):
        if index == num_vars:
            yield tuple(prefix)
            return
        w = weights[index]
        top = degree_left if w == 0 else min(degree_left, weight_left // w)
        for m in range(top + 1):
            yield from extend(prefix + [m], index + 1, degree_left - m, weight_left - m * w)

    yield from extend([], 0, max_insertions, weight_bound)


def degree1_generating_check(genus_bound: int, max_index: int,
                             max_insertions: Optional[int] = None) -> ResidualReport:
    """
    Compare exp(sum c_{2k} y_{2k} lambda^{2k}) with lambda^2 L through lambda^{2G}.

    Variables are y_0, y_2, ..., y_K (K = max_index, even). y_0 carries no
    lambda weight, so monomials are also cut at max_insertions total y-degree
    (default 2G + 2).
    """
    if max_index < 0 or max_index % 2:
        raise ValueError(f"max descendent index must be even and >= 0, got {max_index}")
    if genus_bound < 0:
        raise ValueError(f"genus bound must be >= 0, got {genus_bound}")
    if max_insertions is None:
        max_insertions = 2 * genus_bound + 2
    lam_max = 2 * genus_bound
    even_indices = list(range(0, max_index + 1, 2))
    lam = sp.Symbol('lambda')
    ys = [sp.Symbol(f"y{a}") for a in even_indices]
    gens = [lam] + ys

    def truncate(poly: sp.Poly) -> sp.Poly:
        kept = {m: c for m, c in poly.terms() if m[0] <= lam_max}
        return sp.Poly.from_dict(kept or {(0,) * len(gens): 0}, *gens, domain='QQ')

    # left side: sum_{n <= N} L^n / n!, each L^n homogeneous of y-degree n
    linear = sp.Poly(sum(sp.Rational(c_coefficient(a).numerator, c_coefficient(a).denominator) * y * lam ** a
                         for a, y in zip(even_indices, ys)), *gens, domain='QQ')
    left = sp.Poly(1, *gens, domain='QQ')
    power = sp.Poly(1, *gens, domain='QQ')
    for n in range(1, max_insertions + 1):
        power = truncate(power * linear)
        left = left + power * sp.Rational(1, factorial(n))

    left_terms = {m: _to_fraction(c) for m, c in left.terms() if c != 0}

    # right side: lambda^2 * lambda^{2g-2} <prod tau_{a}>_{g,1} / prod m_a!
    right_terms: Dict[Tuple[int, ...], Fraction] = {}
    for exponents in _monomials(len(ys), max_insertions, even_indices, lam_max):
        key = DescendentKey(a for a, m in zip(even_indices, exponents) for _ in range(m))
        value = degree1_invariant(key)
        for m in exponents:
            value /= factorial(m)
        if value:
            right_terms[(2 * key.genus,) + exponents] = value

    report = ResidualReport()
    for monomial in set(left_terms) | set(right_terms):
        report.compared += 1
        diff = left_terms.get(monomial, Fraction(0)) - right_terms.get(monomial, Fraction(0))
        if diff:
            label = "*".join(f"{g}^{e}" for g, e in zip(gens, monomial) if e) or "1"
            report.residual[label] = diff
    if report.passed:
        logger.info(f"✅ Degree 1 generating identity holds on {report.compared} monomials (G={genus_bound}, K={max_index})")
    else:
        logger.warning(f"❌ Degree 1 generating identity fails on {len(report.residual)} monomials")
    return report


def degree1_consistency_with_Y1(order: int) -> bool:
    """<tau_{2g}(y)>_{g,1} = c_{2g} = lambda^{2g} coefficient of Y_1, for 2g <= order"""
    y1 = one_point_Y_closed(1, order)
    return all(
        degree1_invariant(DescendentKey((two_g,))) == y1.coeff(two_g)
        for two_g in range(0, order + 1, 2)
    )


def degree1_derivation_check(order: int) -> bool:
    """The Toda kernel times Y_0 is S, which turns the Toda exponent into sum c_{2k} y_{2k} lambda^{2k}"""
    return toda_kernel_series(order) * degree0_Y_series(order) == sinh_normalized(order)
