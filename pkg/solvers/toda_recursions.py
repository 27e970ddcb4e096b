"""
Recursions induced by the Toda equation.

- 1-point series Y_d, X_d from the degree-0 seeds
- simple Hurwitz numbers H_{g,d} through d^2 H_{g,d} = sum over P(g,d)
- the residual of the Hurwitz functional equation
      exp(H(y_0+lambda) + H(y_0-lambda) - 2H) = lambda^2 e^{-y_0} H_{y_0 y_0}
  written slice by slice in q = e^{y_0}
"""
from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, NamedTuple, Tuple

from .closed_forms import degree0_X_series, degree0_Y_series, toda_kernel_series
from .series_engine import BiSeries, Series, biseries_exp

logger = logging.getLogger(__name__)


class Triple(NamedTuple):
    g: int
    d: int
    k: int


TripleSequence = Tuple[Triple, ...]


@dataclass
class HurwitzTable:
    """H_{g,d} for 0 <= g <= gmax, 1 <= d <= dmax"""

    gmax: int
    dmax: int
    entries: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        return self.entries[key]

    def covers(self, gmax: int, dmax: int) -> bool:
        return all((g, d) in self.entries for g in range(gmax + 1) for d in range(1, dmax + 1))

    def rows(self) -> List[Tuple[int, int, Fraction]]:
        """(g, d, H) sorted by genus then degree"""
        return [(g, d, value) for (g, d), value in sorted(self.entries.items())]

    def with_entry(self, g: int, d: int, value) -> 'HurwitzTable':
        """Copy with one cell replaced (used to test the residual)"""
        entries = dict(self.entries)
        entries[(g, d)] = Fraction(value)
        return HurwitzTable(self.gmax, self.dmax, entries)

    def restricted(self, gmax: int, dmax: int) -> 'HurwitzTable':
        entries = {(g, d): v for (g, d), v in self.entries.items() if g <= gmax and d <= dmax}
        return HurwitzTable(gmax, dmax, entries)


@lru_cache(maxsize=None)
def cached_factorial(n: int) -> int:
    return factorial(n)


def multinomial(parts: Tuple[int, ...]) -> int:
    """(sum parts)! / prod(part!)"""
    value = cached_factorial(sum(parts))
    for p in parts:
        value //= cached_factorial(p)
    return value


def one_point_by_recursion(dmax: int, order: int) -> List[Tuple[Series, Series]]:
    """
    (Y_d, X_d) for d = 0..dmax from the Toda extraction

        K Y_{d-1} = d^2 Y_d,    K X_{d-1} = d^2 X_d + 2d Y_d,

    K = sum_{k>0} 2 lambda^{2k-2}/(2k)!, seeded by the degree-0 series.
    """
    if dmax < 1:
        raise ValueError(f"dmax must be >= 1, got {dmax}")
    kernel = toda_kernel_series(order)
    y_prev, x_prev = degree0_Y_series(order), degree0_X_series(order)
    out = [(y_prev, x_prev)]
    for d in range(1, dmax + 1):
        y_d = (kernel * y_prev).scale(Fraction(1, d * d))
        x_d = (kernel * x_prev - y_d.scale(2 * d)).scale(Fraction(1, d * d))
        out.append((y_d, x_d))
        y_prev, x_prev = y_d, x_d
    return out


def _parts(remaining_d: int, remaining_e: int) -> Iterator[Triple]:
    # e = g + k - 1 >= 0 is the genus budget a triple consumes
    for d_i in range(1, remaining_d + 1):
        for e_i in range(remaining_e + 1):
            for g_i in range(e_i + 1):
                yield Triple(g_i, d_i, e_i - g_i + 1)


def enumerate_P(g: int, d: int) -> Iterator[TripleSequence]:
    """
    Ordered sequences of (g_i, d_i, k_i) with sum d_i = d - 1 and
    sum (g_i + k_i) = g + l. For d = 1 only the empty sequence, only at g = 0.
    """
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")

    def extend(prefix: TripleSequence, remaining_d: int, remaining_e: int):
        if remaining_d == 0:
            if remaining_e == 0:
                yield prefix
            return
        for triple in _parts(remaining_d, remaining_e):
            yield from extend(prefix + (triple,), remaining_d - triple.d, remaining_e - (triple.g + triple.k - 1))

    yield from extend((), d - 1, g)


def enumerate_P_multisets(g: int, d: int) -> Iterator[Tuple[TripleSequence, Fraction]]:
    """
    Unordered members of P(g, d) as sorted sequences, each with the weight
    2^l / prod(m_t!) that replaces 2^l / l! summed over its orderings.
    """
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")

    def extend(prefix: TripleSequence, remaining_d: int, remaining_e: int):
        if remaining_d == 0:
            if remaining_e == 0:
                yield prefix
            return
        for triple in _parts(remaining_d, remaining_e):
            if prefix and triple < prefix[-1]:
                continue
            yield from extend(prefix + (triple,), remaining_d - triple.d, remaining_e - (triple.g + triple.k - 1))

    for xi in extend((), d - 1, g):
        weight = Fraction(2 ** len(xi))
        for multiplicity in Counter(xi).values():
            weight /= cached_factorial(multiplicity)
        yield xi, weight


def _recursion_term(xi: TripleSequence, g: int, d: int, table: HurwitzTable) -> Fraction:
    parts = []
    product = Fraction(1)
    for t in xi:
        parts.extend((2 * t.g + 2 * t.d - 2, 2 * t.k))
        product *= t.d ** (2 * t.k) * table[(t.g, t.d)]
        if not product:
            return product
    assert sum(parts) == 2 * g + 2 * d - 2
    return multinomial(tuple(parts)) * product


def hurwitz_cell(g: int, d: int, table: HurwitzTable) -> Fraction:
    """H_{g,d} from the cells of lower degree already in the table"""
    total = Fraction(0)
    for xi, weight in enumerate_P_multisets(g, d):
        total += weight * _recursion_term(xi, g, d, table)
    return total / (d * d)


def hurwitz_by_recursion(gmax: int, dmax: int) -> HurwitzTable:
    """Fill H_{g,d} in increasing degree"""
    if gmax < 0 or dmax < 1:
        raise ValueError(f"need gmax >= 0 and dmax >= 1, got gmax={gmax}, dmax={dmax}")
    started = time.perf_counter()
    table = HurwitzTable(gmax, dmax)
    for d in range(1, dmax + 1):
        for g in range(gmax + 1):
            table.entries[(g, d)] = hurwitz_cell(g, d, table)
    logger.info(f"✅ Hurwitz recursion filled g<={gmax}, d<={dmax} in {time.perf_counter() - started:.3f}s")
    return table


def normalized_hurwitz(table: HurwitzTable, g: int, d: int) -> Fraction:
    """h_{g,d} = H_{g,d} / (2g+2d-2)!"""
    return table[(g, d)] / cached_factorial(2 * g + 2 * d - 2)


def hurwitz_generating_slices(table: HurwitzTable, genus_bound: int, degree_bound: int) -> BiSeries:
    """lambda^2 H(lambda, y_0): slice d holds sum_g h_{g,d} lambda^{2g}, slice 0 is zero"""
    if not table.covers(genus_bound, degree_bound):
        raise ValueError(
            f"table (gmax={table.gmax}, dmax={table.dmax}) does not cover G={genus_bound}, D={degree_bound}"
        )
    order = 2 * genus_bound
    slices = [Series.zero(order)]
    for d in range(1, degree_bound + 1):
        slices.append(Series.from_terms(
            {2 * g: normalized_hurwitz(table, g, d) for g in range(genus_bound + 1)}, order))
    return BiSeries(slices)


def _shift_kernel(d: int, order: int) -> Series:
    # (e^{d lambda} + e^{-d lambda} - 2) / lambda^2
    return Series.from_terms(
        {2 * k - 2: Fraction(2 * d ** (2 * k), cached_factorial(2 * k)) for k in range(1, order // 2 + 2)},
        order,
    )


def toda_residual_H(table: HurwitzTable, genus_bound: int, degree_bound: int) -> BiSeries:
    """
    exp(sum 2 d^{2k}/(2k)! h_{g,d} lambda^{2g-2+2k} q^d) - sum d^2 h_{g,d} lambda^{2g} q^{d-1}

    through q^{D-1} and lambda^{2G}; identically zero for a correct table.
    """
    generating = hurwitz_generating_slices(table, genus_bound, degree_bound)
    order = 2 * genus_bound
    top = degree_bound - 1
    exponent = BiSeries([Series.zero(order)] + [
        _shift_kernel(d, order) * generating[d] for d in range(1, top + 1)
    ])
    lhs = biseries_exp(exponent)
    rhs = BiSeries([generating[d + 1].scale((d + 1) ** 2) for d in range(top + 1)])
    residual = lhs - rhs
    if residual.is_zero():
        logger.info(f"✅ Hurwitz Toda residual vanishes through G={genus_bound}, D={degree_bound}")
    else:
        logger.warning(f"⚠️  Hurwitz Toda residual is nonzero through G={genus_bound}, D={degree_bound}")
    return residual


def residual_cell(q_degree: int, lambda_power: int) -> Tuple[int, int, int]:
    """
    (g, d, lambda-power) named by a residual cell: the q^{d-1} lambda^{2g}
    coefficient is where H_{g,d} enters linearly.
    """
    return lambda_power // 2, q_degree + 1, lambda_power
