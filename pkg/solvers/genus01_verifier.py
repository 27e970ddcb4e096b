"""
Genus 0 and genus 1 Toda identities, checked symbolically.

The genus 1 equation reduces to

    Q (A_0 + log D)_{x_0 x_0} = (-A_0 + log D)_{y_0 y_0},   D = B_1^2 - Q A_1^2,

in the free polynomial ring Q[A_i, B_i, Q] with D inverted. Q = exp(A_0)
(the genus 0 reading) and the derivations are

    d/dx_0:  A_i -> A_{i+1},  B_i -> B_{i+1},            Q -> Q A_1
    d/dy_0:  A_i -> B_{i+1},  B_i -> (d/dx_0)^i (Q A_1),  Q -> Q B_1
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional

import sympy as sp
from sympy.polys.orderings import grlex

logger = logging.getLogger(__name__)

RING_HEADROOM = 4


class DiffRing:
    """Generators A_0..A_m, B_0..B_m, Q of the free ring"""

    def __init__(self, m: int = RING_HEADROOM):
        self.m = m
        self.a_symbols = [sp.Symbol(f"A{i}") for i in range(m + 1)]
        self.b_symbols = [sp.Symbol(f"B{i}") for i in range(m + 1)]
        self.q_symbol = sp.Symbol("Q")
        self.gens = tuple(self.a_symbols + self.b_symbols + [self.q_symbol])

    def poly(self, expr) -> 'DiffPoly':
        return DiffPoly(sp.Poly(expr, *self.gens, domain='QQ'), self)

    def A(self, i: int) -> 'DiffPoly':
        self._check_index(i)
        return self.poly(self.a_symbols[i])

    def B(self, i: int) -> 'DiffPoly':
        self._check_index(i)
        return self.poly(self.b_symbols[i])

    @property
    def Q(self) -> 'DiffPoly':
        return self.poly(self.q_symbol)

    def delta(self) -> 'DiffPoly':
        """B_1^2 - Q A_1^2"""
        return self.B(1) ** 2 - self.Q * self.A(1) ** 2

    def _check_index(self, i: int) -> None:
        if not 0 <= i <= self.m:
            raise ValueError(f"derivative index {i} exceeds the ring headroom m={self.m}")


@dataclass(frozen=True)
class DiffPoly:
    """Polynomial over QQ in the ring's generators; zero terms are never stored"""

    poly: sp.Poly
    ring: DiffRing

    def _wrap(self, poly: sp.Poly) -> 'DiffPoly':
        return DiffPoly(poly, self.ring)

    def _coerce(self, other) -> sp.Poly:
        if isinstance(other, DiffPoly):
            return other.poly
        if isinstance(other, Fraction):
            other = sp.Rational(other.numerator, other.denominator)
        return sp.Poly(other, *self.ring.gens, domain='QQ')

    def __add__(self, other) -> 'DiffPoly':
        return self._wrap(self.poly + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> 'DiffPoly':
        return self._wrap(self.poly - self._coerce(other))

    def __rsub__(self, other) -> 'DiffPoly':
        return self._wrap(self._coerce(other) - self.poly)

    def __neg__(self) -> 'DiffPoly':
        return self._wrap(-self.poly)

    def __mul__(self, other) -> 'DiffPoly':
        return self._wrap(self.poly * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'DiffPoly':
        return self._wrap(self.poly ** k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return (self.poly - other.poly).is_zero

    def __hash__(self) -> int:
        return hash(tuple(self.terms().items()))

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def partial(self, symbol: sp.Symbol) -> 'DiffPoly':
        return self._wrap(self.poly.diff(symbol))

    def variables(self):
        """Generators that actually occur"""
        degrees = self.poly.degree_list()
        return [gen for gen, deg in zip(self.ring.gens, degrees) if deg > 0]

    def max_index(self) -> int:
        """Largest derivative index among the A_i, B_i that occur (-1 if none)"""
        top = -1
        for gen in self.variables():
            name = gen.name
            if name[0] in 'AB':
                top = max(top, int(name[1:]))
        return top

    def subs(self, values: Mapping[str, object]) -> 'DiffPoly':
        """Substitute generators by name, e.g. {'B1': 0, 'A1': 0}"""
        mapping = {sp.Symbol(name): value for name, value in values.items()}
        return self.ring.poly(self.poly.as_expr().subs(mapping))

    def terms(self) -> Dict[tuple, Fraction]:
        out = {}
        for monomial, coeff in self.poly.terms():
            rational = sp.Rational(coeff)
            if rational != 0:
                out[monomial] = Fraction(int(rational.p), int(rational.q))
        return out

    def term_count(self) -> int:
        return len(self.terms())

    def canonical(self) -> str:
        """Graded lexicographic serialization; '0' for the zero polynomial"""
        items = sorted(self.terms().items(), key=lambda item: grlex(item[0]), reverse=True)
        if not items:
            return "0"
        pieces = []
        for monomial, coeff in items:
            factors = [f"{gen}^{e}" if e > 1 else str(gen)
                       for gen, e in zip(self.ring.gens, monomial) if e]
            pieces.append("*".join([str(coeff)] + factors) if factors else str(coeff))
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.canonical()


class Derivation:
    """
    Leibniz extension of a table of generator images.

    Images may be given eagerly in `images` or produced by `lazy(symbol)`
    on first use; lazy results are memoized.
    """

    def __init__(self, ring: DiffRing, images: Dict[sp.Symbol, DiffPoly],
                 lazy: Optional[Callable[[sp.Symbol], Optional[DiffPoly]]] = None):
        self.ring = ring
        self.images = dict(images)
        self.lazy = lazy

    def image(self, symbol: sp.Symbol) -> DiffPoly:
        if symbol not in self.images and self.lazy is not None:
            produced = self.lazy(symbol)
            if produced is not None:
                self.images[symbol] = produced
        if symbol not in self.images:
            raise ValueError(f"no derivation image for {symbol} within ring headroom m={self.ring.m}")
        return self.images[symbol]

    def __call__(self, p: DiffPoly) -> DiffPoly:
        result = self.ring.poly(0)
        for gen in p.variables():
            result = result + p.partial(gen) * self.image(gen)
        return result

    def with_image(self, symbol: sp.Symbol, image: DiffPoly) -> 'Derivation':
        """Copy with one table entry replaced"""
        images = dict(self.images)
        images[symbol] = image
        return Derivation(self.ring, images, self.lazy)


def x_derivation(ring: DiffRing) -> Derivation:
    images = {ring.q_symbol: ring.Q * ring.A(1)}
    for i in range(ring.m):
        images[ring.a_symbols[i]] = ring.A(i + 1)
        images[ring.b_symbols[i]] = ring.B(i + 1)
    return Derivation(ring, images)


def y_derivation(ring: DiffRing, d_x: Optional[Derivation] = None) -> Derivation:
    d_x = d_x or x_derivation(ring)
    images = {ring.q_symbol: ring.Q * ring.B(1)}
    for i in range(ring.m):
        images[ring.a_symbols[i]] = ring.B(i + 1)
    b_index = {sym: i for i, sym in enumerate(ring.b_symbols)}

    def b_image(symbol: sp.Symbol) -> Optional[DiffPoly]:
        # d/dy_0 B_i = (d/dx_0)^i (Q A_1)
        if symbol not in b_index:
            return None
        value = ring.Q * ring.A(1)
        for _ in range(b_index[symbol]):
            value = d_x(value)
        return value

    return Derivation(ring, images, lazy=b_image)


def d_x0(p: DiffPoly) -> DiffPoly:
    return x_derivation(p.ring)(p)


def d_y0(p: DiffPoly) -> DiffPoly:
    return y_derivation(p.ring)(p)


@dataclass(frozen=True)
class LocalizedElement:
    """numerator / D^delta_power"""

    numerator: DiffPoly
    delta_power: int

    def lift(self, power: int) -> DiffPoly:
        """Numerator over the common denominator D^power"""
        if power < self.delta_power:
            raise ValueError(f"cannot lift D^{self.delta_power} to D^{power}")
        return self.numerator * self.numerator.ring.delta() ** (power - self.delta_power)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        top = max(self.delta_power, other.delta_power)
        return self.lift(top) == other.lift(top)

    def __hash__(self) -> int:
        return hash(self.delta_power)


def log_delta_second(derivation: Derivation) -> LocalizedElement:
    """(log D)'' = (D D'' - D'^2) / D^2"""
    delta = derivation.ring.delta()
    first = derivation(delta)
    second = derivation(first)
    return LocalizedElement(delta * second - first ** 2, 2)


def log_delta_second_derivs(ring: Optional[DiffRing] = None):
    """((log D)_{x0x0}, (log D)_{y0y0}) as elements over D^2"""
    ring = ring or DiffRing()
    d_x = x_derivation(ring)
    return log_delta_second(d_x), log_delta_second(y_derivation(ring, d_x))


@dataclass(frozen=True)
class Genus1Report:
    lhs: DiffPoly
    rhs: DiffPoly

    @property
    def residual(self) -> DiffPoly:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


def genus1_toda_report(ring: Optional[DiffRing] = None, d_x: Optional[Derivation] = None,
                       d_y: Optional[Derivation] = None, q_scale=1) -> Genus1Report:
    """
    Both sides of Q (A_0 + log D)_{xx} = (-A_0 + log D)_{yy}, multiplied
    through by D^2. q_scale multiplies the leading Q of the left side.
    """
    ring = ring or DiffRing()
    d_x = d_x or x_derivation(ring)
    d_y = d_y or y_derivation(ring, d_x)
    delta_sq = ring.delta() ** 2

    a0 = ring.A(0)
    xx = log_delta_second(d_x)
    yy = log_delta_second(d_y)
    lhs = ring.Q * q_scale * (d_x(d_x(a0)) * delta_sq + xx.lift(2))
    rhs = -d_y(d_y(a0)) * delta_sq + yy.lift(2)
    for side in (lhs, rhs):
        if side.max_index() > 3:
            raise AssertionError(f"genus 1 identity touched derivative index {side.max_index()} > 3")
    return Genus1Report(lhs, rhs)


def verify_genus1_toda(**kwargs) -> bool:
    report = genus1_toda_report(**kwargs)
    if report.passed:
        logger.info(f"✅ Genus 1 Toda identity holds ({report.lhs.term_count()} / {report.rhs.term_count()} terms)")
    else:
        logger.warning(f"❌ Genus 1 Toda residual has {report.residual.term_count()} terms")
    return report.passed


def verify_derivations_commute(ring: Optional[DiffRing] = None, max_index: int = 2) -> bool:
    """d_x0 d_y0 = d_y0 d_x0 on A_i, B_i (i <= max_index) and Q"""
    ring = ring or DiffRing()
    d_x = x_derivation(ring)
    d_y = y_derivation(ring, d_x)
    generators = [ring.Q] + [ring.A(i) for i in range(max_index + 1)] + [ring.B(i) for i in range(max_index + 1)]
    return all(d_x(d_y(p)) == d_y(d_x(p)) for p in generators)


def small_phase_potential():
    """F^0 restricted to the small phase space: x_0^2 y_0 / 2 + e^{y_0}"""
    x0, y0 = sp.symbols('x0 y0')
    return x0, y0, x0 ** 2 * y0 / 2 + sp.exp(y0)


def verify_genus0_small_phase() -> bool:
    """exp(F_{x0x0}) = F_{y0y0} on the small phase space"""
    x0, y0, potential = small_phase_potential()
    f_xx = sp.diff(potential, x0, 2)
    f_yy = sp.diff(potential, y0, 2)
    holds = sp.simplify(sp.exp(f_xx) - f_yy) == 0
    logger.info(f"{'✅' if holds else '❌'} Genus 0 small phase space: exp({f_xx}) vs {f_yy}")
    return holds
