"""
Exact truncated power series in lambda over the rationals.

A Series of order N knows the coefficients of lambda^0 .. lambda^N; anything
above N is unknown rather than zero, so every binary operation returns the
smaller of the two orders.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from .errors import SeriesPreconditionError

Scalar = Union[int, Fraction]


def to_rational(value: Union[Scalar, str]) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction; floats are refused"""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted, pass a Fraction or 'p/q' string")
    return Fraction(value)


def format_rational(value: Scalar) -> str:
    """Serialize as "p/q" in lowest terms, or "p" when the denominator is 1"""
    return str(Fraction(value))


@dataclass(frozen=True)
class Series:
    """Truncated series c_0 + c_1 lambda + ... + c_N lambda^N"""

    coeffs: Tuple[Fraction, ...]
    order: int

    def __init__(self, coeffs: Iterable[Scalar], order: int = None):
        values = tuple(to_rational(c) for c in coeffs)
        if order is None:
            order = len(values) - 1
        if order < 0:
            raise SeriesPreconditionError(f"series order must be >= 0, got {order}")
        if len(values) > order + 1:
            values = values[:order + 1]
        values = values + (Fraction(0),) * (order + 1 - len(values))
        object.__setattr__(self, 'coeffs', values)
        object.__setattr__(self, 'order', order)

    @classmethod
    def constant(cls, value: Scalar, order: int) -> 'Series':
        return cls([value], order)

    @classmethod
    def zero(cls, order: int) -> 'Series':
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> 'Series':
        return cls([1], order)

    @classmethod
    def variable(cls, order: int) -> 'Series':
        """The series lambda itself"""
        return cls([0, 1], order)

    @classmethod
    def from_terms(cls, terms: dict, order: int) -> 'Series':
        """Build from {power: coefficient}; powers above the order are dropped"""
        values = [Fraction(0)] * (order + 1)
        for power, value in terms.items():
            if power < 0:
                raise SeriesPreconditionError(f"negative power {power} in a power series")
            if power <= order:
                values[power] += to_rational(value)
        return cls(values, order)

    def __getitem__(self, power: int) -> Fraction:
        return self.coeff(power)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def coeff(self, power: int) -> Fraction:
        if power < 0:
            return Fraction(0)
        if power > self.order:
            raise SeriesPreconditionError(
                f"coefficient of lambda^{power} is unknown at truncation order {self.order}"
            )
        return self.coeffs[power]

    def truncate(self, order: int) -> 'Series':
        if order > self.order:
            raise SeriesPreconditionError(f"cannot raise truncation order {self.order} to {order}")
        return Series(self.coeffs[:order + 1], order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def scale(self, factor: Scalar) -> 'Series':
        factor = to_rational(factor)
        return Series((c * factor for c in self.coeffs), self.order)

    def __neg__(self) -> 'Series':
        return self.scale(-1)

    def __add__(self, other) -> 'Series':
        if isinstance(other, Series):
            return series_add(self, other)
        return series_add(self, Series.constant(other, self.order))

    __radd__ = __add__

    def __sub__(self, other) -> 'Series':
        return self + (-other)

    def __rsub__(self, other) -> 'Series':
        return (-self) + other

    def __mul__(self, other) -> 'Series':
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> 'Series':
        if isinstance(other, Series):
            return series_div(self, other)
        return self.scale(Fraction(1) / to_rational(other))

    def __rtruediv__(self, other) -> 'Series':
        return series_div(Series.constant(other, self.order), self)

    def __pow__(self, k: int) -> 'Series':
        return series_pow_int(self, k)

    def __repr__(self) -> str:
        terms = ", ".join(format_rational(c) for c in self.coeffs)
        return f"Series([{terms}], order={self.order})"


def series_add(f: Series, g: Series) -> Series:
    order = min(f.order, g.order)
    return Series((f.coeffs[i] + g.coeffs[i] for i in range(order + 1)), order)


def series_mul(f: Series, g: Series) -> Series:
    order = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    out = []
    for n in range(order + 1):
        total = Fraction(0)
        for i in range(n + 1):
            if a[i] and b[n - i]:
                total += a[i] * b[n - i]
        out.append(total)
    return Series(out, order)


def series_div(f: Series, g: Series) -> Series:
    if g.coeffs[0] == 0:
        raise SeriesPreconditionError("cannot divide by a series with zero constant term")
    order = min(f.order, g.order)
    inv_lead = Fraction(1) / g.coeffs[0]
    out: List[Fraction] = []
    for n in range(order + 1):
        total = f.coeffs[n]
        for j in range(1, n + 1):
            if g.coeffs[j]:
                total -= g.coeffs[j] * out[n - j]
        out.append(total * inv_lead)
    return Series(out, order)


def series_exp(f: Series) -> Series:
    """exp(f) from h' = f' h, i.e. n h_n = sum_j j f_j h_{n-j}"""
    if f.coeffs[0] != 0:
        raise SeriesPreconditionError(
            f"exp needs a zero constant term, got {format_rational(f.coeffs[0])}"
        )
    out = [Fraction(1)]
    for n in range(1, f.order + 1):
        total = Fraction(0)
        for j in range(1, n + 1):
            if f.coeffs[j]:
                total += j * f.coeffs[j] * out[n - j]
        out.append(total / n)
    return Series(out, f.order)


def series_log(f: Series) -> Series:
    """log(f) from f' = g' f, i.e. n g_n = n f_n - sum_{j<n} j g_j f_{n-j}"""
    if f.coeffs[0] != 1:
        raise SeriesPreconditionError(
            f"log needs constant term 1, got {format_rational(f.coeffs[0])}"
        )
    out = [Fraction(0)]
    for n in range(1, f.order + 1):
        total = n * f.coeffs[n]
        for j in range(1, n):
            if out[j]:
                total -= j * out[j] * f.coeffs[n - j]
        out.append(total / n)
    return Series(out, f.order)


def series_pow_int(f: Series, k: int) -> Series:
    if k < 0:
        if f.coeffs[0] == 0:
            raise SeriesPreconditionError("negative power of a series with zero constant term")
        return series_pow_int(series_div(Series.one(f.order), f), -k)
    result = Series.one(f.order)
    base = f
    # square-and-multiply
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


@dataclass(frozen=True)
class BiSeries:
    """
    Series in q = e^{y_0} whose coefficients are lambda-series.

    Slice d is the coefficient of q^d; every slice shares one lambda order.
    """

    slices: Tuple[Series, ...]

    def __init__(self, slices: Sequence[Series]):
        slices = tuple(slices)
        if not slices:
            raise SeriesPreconditionError("a BiSeries needs at least the q^0 slice")
        orders = {s.order for s in slices}
        if len(orders) != 1:
            raise SeriesPreconditionError(f"BiSeries slices disagree on lambda order: {sorted(orders)}")
        object.__setattr__(self, 'slices', slices)

    @classmethod
    def zero(cls, degree: int, order: int) -> 'BiSeries':
        return cls([Series.zero(order)] * (degree + 1))

    @property
    def degree(self) -> int:
        return len(self.slices) - 1

    @property
    def order(self) -> int:
        return self.slices[0].order

    def __getitem__(self, d: int) -> Series:
        return self.slices[d]

    def coeff(self, d: int, power: int) -> Fraction:
        return self.slices[d].coeff(power)

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.slices)

    def nonzero_cells(self) -> Iterator[Tuple[int, int, Fraction]]:
        """(q-degree, lambda-power, coefficient) for every nonzero coefficient"""
        for d, s in enumerate(self.slices):
            for power, value in enumerate(s.coeffs):
                if value:
                    yield d, power, value

    def __add__(self, other: 'BiSeries') -> 'BiSeries':
        degree = min(self.degree, other.degree)
        return BiSeries([self.slices[d] + other.slices[d] for d in range(degree + 1)])

    def __neg__(self) -> 'BiSeries':
        return BiSeries([-s for s in self.slices])

    def __sub__(self, other: 'BiSeries') -> 'BiSeries':
        return self + (-other)

    def __mul__(self, other: 'BiSeries') -> 'BiSeries':
        degree = min(self.degree, other.degree)
        order = min(self.order, other.order)
        out = []
        for n in range(degree + 1):
            total = Series.zero(order)
            for i in range(n + 1):
                total = total + self.slices[i] * other.slices[n - i]
            out.append(total)
        return BiSeries(out)


def biseries_exp(f: BiSeries) -> BiSeries:
    """exp in both gradings: E_0 = exp(f_0), n E_n = sum_j j f_j E_{n-j}"""
    out = [series_exp(f.slices[0])]
    for n in range(1, f.degree + 1):
        total = Series.zero(f.order)
        for j in range(1, n + 1):
            if not f.slices[j].is_zero():
                total = total + f.slices[j] * out[n - j] * j
        out.append(total / n)
    return BiSeries(out)
