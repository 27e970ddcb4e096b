"""
Toda-equation solvers for the Gromov-Witten theory of P^1
"""
from .series_engine import Series, BiSeries
from .toda_recursions import HurwitzTable, hurwitz_by_recursion, one_point_by_recursion, toda_residual_H
from .hurwitz_oracle import hurwitz_oracle
from .degree_one import DescendentKey, degree1_invariant
from .genus01_verifier import verify_genus0_small_phase, verify_genus1_toda
from .table_store import TableStore

__all__ = [
    'Series', 'BiSeries', 'HurwitzTable', 'hurwitz_by_recursion', 'one_point_by_recursion',
    'toda_residual_H', 'hurwitz_oracle', 'DescendentKey', 'degree1_invariant',
    'verify_genus0_small_phase', 'verify_genus1_toda', 'TableStore',
]
