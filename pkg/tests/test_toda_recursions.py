from collections import defaultdict
from fractions import Fraction
from math import factorial

import pytest

from solvers.closed_forms import one_point_X_closed, one_point_Y_closed, sinh_normalized
from solvers.hurwitz_oracle import hurwitz_genus0_closed, hurwitz_oracle
from solvers.series_engine import series_log
from solvers.toda_recursions import (
    HurwitzTable,
    Triple,
    enumerate_P,
    enumerate_P_multisets,
    hurwitz_by_recursion,
    hurwitz_generating_slices,
    one_point_by_recursion,
    residual_cell,
    toda_residual_H,
)

ORDER = 10


def test_one_point_recursion_first_steps():
    s = sinh_normalized(ORDER)
    steps = one_point_by_recursion(2, ORDER)
    assert steps[1][0] == s
    assert steps[2][0] == (s ** 3).scale(Fraction(1, 4))
    assert steps[1][1] == (s * series_log(s)).scale(2) - s.scale(2)


def test_one_point_recursion_matches_closed_forms():
    for d, (y_d, x_d) in enumerate(one_point_by_recursion(6, ORDER)):
        if d == 0:
            continue
        assert y_d == one_point_Y_closed(d, ORDER)
        assert x_d == one_point_X_closed(d, ORDER)


def test_one_point_recursion_matches_closed_forms_at_lambda_20():
    for d, (y_d, x_d) in enumerate(one_point_by_recursion(6, 20)):
        if d == 0:
            continue
        assert y_d == one_point_Y_closed(d, 20)
        assert x_d == one_point_X_closed(d, 20)


def test_one_point_recursion_needs_positive_degree():
    with pytest.raises(ValueError):
        one_point_by_recursion(0, ORDER)


def test_enumerate_P_examples():
    assert list(enumerate_P(0, 2)) == [(Triple(0, 1, 1),)]
    assert list(enumerate_P(1, 1)) == []
    assert list(enumerate_P(0, 1)) == [()]
    assert sorted(enumerate_P(0, 3)) == sorted([
        (Triple(0, 2, 1),),
        (Triple(0, 1, 1), Triple(0, 1, 1)),
    ])


@pytest.mark.parametrize('g', range(0, 4))
@pytest.mark.parametrize('d', range(1, 6))
def test_members_of_P_satisfy_the_constraints(g, d):
    for xi in enumerate_P(g, d):
        assert sum(t.d for t in xi) == d - 1
        assert sum(t.g + t.k for t in xi) == g + len(xi)
        assert all(t.g >= 0 and t.d >= 1 and t.k >= 1 for t in xi)


@pytest.mark.parametrize('g', range(0, 4))
@pytest.mark.parametrize('d', range(1, 6))
def test_multiset_weights_match_ordered_sum(g, d):
    ordered = defaultdict(Fraction)
    for xi in enumerate_P(g, d):
        ordered[tuple(sorted(xi))] += Fraction(2 ** len(xi), factorial(len(xi)))
    multisets = dict(enumerate_P_multisets(g, d))
    assert multisets == dict(ordered)


def test_hurwitz_examples(hurwitz_table):
    assert hurwitz_table[(0, 1)] == 1
    assert hurwitz_table[(0, 2)] == Fraction(1, 2)
    assert hurwitz_table[(0, 3)] == 4
    assert hurwitz_table[(1, 2)] == Fraction(1, 2)
    for g in range(1, 4):
        assert hurwitz_table[(g, 1)] == 0
    assert all(value >= 0 for _, _, value in hurwitz_table.rows())


def test_genus0_matches_closed_formula(hurwitz_table):
    for d in range(1, 6):
        assert hurwitz_table[(0, d)] == hurwitz_genus0_closed(d)


# every cell with d <= 5 and at most 12 branch points
ORACLE_CELLS = [(g, d) for d in range(1, 6) for g in range(0, 8) if 2 * g + 2 * d - 2 <= 12]
DIRECT_CELLS = [(g, d) for d in range(1, 4) for g in range(0, 5) if 2 * g + 2 * d - 2 <= 8]


@pytest.fixture(scope='module')
def wide_table():
    return hurwitz_by_recursion(6, 5)


@pytest.mark.parametrize('g,d', ORACLE_CELLS)
def test_recursion_matches_oracle(wide_table, g, d):
    assert wide_table[(g, d)] == hurwitz_oracle(g, d)


@pytest.mark.parametrize('g,d', DIRECT_CELLS)
def test_recursion_matches_direct_enumeration(wide_table, g, d):
    assert wide_table[(g, d)] == hurwitz_oracle(g, d, backend='direct')


@pytest.mark.slow
@pytest.mark.parametrize('g', range(0, 4))
@pytest.mark.parametrize('d', range(5, 7))
def test_recursion_matches_oracle_wide(g, d):
    assert hurwitz_by_recursion(3, 6)[(g, d)] == hurwitz_oracle(g, d)


def test_recursion_is_deterministic():
    assert hurwitz_by_recursion(2, 4).entries == hurwitz_by_recursion(2, 4).entries
    assert hurwitz_by_recursion(3, 5).restricted(2, 4).entries == hurwitz_by_recursion(2, 4).entries


def test_recursion_rejects_bad_bounds():
    with pytest.raises(ValueError):
        hurwitz_by_recursion(1, 0)


def test_residual_vanishes_for_the_recursion_table(hurwitz_table):
    assert toda_residual_H(hurwitz_table, 3, 5).is_zero()
    assert toda_residual_H(hurwitz_table, 1, 3).is_zero()


def test_residual_of_the_trivial_table():
    table = HurwitzTable(0, 1, {(0, 1): Fraction(1)})
    residual = toda_residual_H(table, 0, 1)
    assert residual.is_zero()
    assert residual.coeff(0, 0) == 0


def test_perturbed_cell_shows_up_in_the_residual(hurwitz_table):
    tampered = hurwitz_table.with_entry(1, 2, hurwitz_table[(1, 2)] + 1)
    assert hurwitz_table[(1, 2)] == Fraction(1, 2)
    cells = list(toda_residual_H(tampered, 2, 3).nonzero_cells())
    q_degree, power, value = cells[0]
    assert (q_degree, power) == (1, 2)
    assert value != 0
    assert residual_cell(q_degree, power) == (1, 2, 2)


@pytest.mark.parametrize('g', range(0, 4))
@pytest.mark.parametrize('d', range(1, 6))
def test_any_perturbed_cell_is_located_by_the_residual(hurwitz_table, g, d):
    tampered = hurwitz_table.with_entry(g, d, hurwitz_table[(g, d)] + 1)
    q_degree, power, value = next(toda_residual_H(tampered, 3, 5).nonzero_cells())
    assert (q_degree, power) == (d - 1, 2 * g)
    assert value == -Fraction(d * d, factorial(2 * g + 2 * d - 2))
    assert residual_cell(q_degree, power) == (g, d, 2 * g)


def test_generating_slices_need_coverage(hurwitz_table):
    slices = hurwitz_generating_slices(hurwitz_table, 1, 2)
    assert slices.coeff(2, 2) == Fraction(1, 2) / factorial(4)
    assert slices[0].is_zero()
    with pytest.raises(ValueError):
        hurwitz_generating_slices(hurwitz_table, 4, 2)
