import random

import pytest
import sympy as sp

from solvers.genus01_verifier import (
    DiffRing,
    d_x0,
    d_y0,
    genus1_toda_report,
    log_delta_second_derivs,
    small_phase_potential,
    verify_derivations_commute,
    verify_genus0_small_phase,
    verify_genus1_toda,
    x_derivation,
    y_derivation,
)


def test_x_derivation_examples(ring):
    A, B, Q = ring.A, ring.B, ring.Q
    assert d_x0(A(0)) == A(1)
    assert d_x0(Q) == Q * A(1)
    assert d_x0(ring.delta()) == 2 * B(1) * B(2) - Q * A(1) ** 3 - 2 * Q * A(1) * A(2)


def test_y_derivation_examples(ring):
    A, B, Q = ring.A, ring.B, ring.Q
    assert d_y0(B(0)) == Q * A(1)
    assert d_y0(A(0)) == B(1)
    assert d_y0(Q) == Q * B(1)
    assert d_y0(B(1)) == Q * A(1) ** 2 + Q * A(2)


def test_log_delta_second_derivatives(ring):
    xx, yy = log_delta_second_derivs(ring)
    assert xx.delta_power == 2 and yy.delta_power == 2
    assert xx.numerator.max_index() <= 3
    assert yy.numerator.max_index() <= 3


def test_log_delta_with_B_removed(ring):
    # with B_i = 0, D = -Q A_1^2 and (log D)'' = A_2 + 2 (A_1 A_3 - A_2^2) / A_1^2
    xx, _ = log_delta_second_derivs(ring)
    no_b = {f"B{i}": 0 for i in range(ring.m + 1)}
    A, Q = ring.A, ring.Q
    expected = Q ** 2 * A(1) ** 2 * (A(2) * A(1) ** 2 + 2 * A(3) * A(1) - 2 * A(2) ** 2)
    assert xx.numerator.subs(no_b) == expected


def test_genus1_identity_holds():
    report = genus1_toda_report()
    assert report.passed
    assert report.residual.canonical() == '0'
    assert report.lhs.term_count() > 0
    assert verify_genus1_toda()


def test_scaling_Q_breaks_the_identity():
    assert not verify_genus1_toda(q_scale=2)


@pytest.mark.parametrize('side,image', [
    ('x', lambda r: 2 * r.A(1)),
    ('x', lambda r: r.A(1) + r.B(1)),
    ('x', lambda r: r.A(1) + r.Q),
    ('y', lambda r: 2 * r.B(1)),
    ('y', lambda r: r.B(1) + r.A(1)),
])
def test_perturbed_derivation_table_breaks_the_identity(side, image):
    ring = DiffRing()
    d_x = x_derivation(ring)
    d_y = y_derivation(ring, d_x)
    a0 = ring.a_symbols[0]
    if side == 'x':
        d_x = d_x.with_image(a0, image(ring))
    else:
        d_y = d_y.with_image(a0, image(ring))
    assert not genus1_toda_report(ring, d_x, d_y).passed


# every generator image the genus 1 identity reads, under either derivation
USED_ENTRIES = [(side, name) for side in ('x', 'y') for name in ('Q', 'A0', 'A1', 'A2', 'B1', 'B2')]


def _tables_with_doubled_entry(side, name):
    ring = DiffRing()
    d_x = x_derivation(ring)
    d_y = y_derivation(ring, d_x)
    symbol = sp.Symbol(name)
    if side == 'x':
        d_x = d_x.with_image(symbol, d_x.image(symbol) * 2)
    else:
        d_y = d_y.with_image(symbol, d_y.image(symbol) * 2)
    return ring, d_x, d_y


@pytest.mark.parametrize('side,name', USED_ENTRIES)
def test_any_used_table_entry_breaks_the_identity(side, name):
    assert not genus1_toda_report(*_tables_with_doubled_entry(side, name)).passed


def test_unused_entry_leaves_the_identity_alone():
    # B_0 only enters through d_y(B_0), which neither side reads
    assert genus1_toda_report(*_tables_with_doubled_entry('y', 'B0')).passed


def test_degenerate_point_clears_both_sides(ring):
    xx, yy = log_delta_second_derivs(ring)
    degenerate = {f"B{i}": 0 for i in range(ring.m + 1)}
    degenerate['A1'] = 0
    assert xx.numerator.subs(degenerate).is_zero()
    assert yy.numerator.subs(degenerate).is_zero()


def test_derivations_commute():
    assert verify_derivations_commute(max_index=2)


def _random_poly(ring, rng):
    gens = [ring.Q] + [ring.A(i) for i in range(3)] + [ring.B(i) for i in range(3)]
    total = ring.poly(0)
    for _ in range(rng.randint(1, 3)):
        term = ring.poly(rng.randint(-3, 3) or 1)
        for _ in range(rng.randint(0, 2)):
            term = term * rng.choice(gens)
        total = total + term
    return total


@pytest.mark.parametrize('seed', range(20))
def test_leibniz_rule(ring, seed):
    rng = random.Random(seed)
    p, q = _random_poly(ring, rng), _random_poly(ring, rng)
    d_x = x_derivation(ring)
    for d in (d_x, y_derivation(ring, d_x)):
        assert d(p * q) == d(p) * q + p * d(q)


def test_ring_headroom(ring):
    with pytest.raises(ValueError):
        ring.A(ring.m + 1)
    assert ring.poly(0).canonical() == '0'


def test_genus0_small_phase():
    x0, y0, potential = small_phase_potential()
    assert sp.diff(potential, x0, 2) == y0
    assert sp.diff(potential, y0, 2) == sp.exp(y0)
    assert verify_genus0_small_phase()
