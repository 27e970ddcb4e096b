import random
from fractions import Fraction

import pytest

import main as cli
from solvers.genus01_verifier import DiffRing
from solvers.series_engine import Series
from solvers.toda_recursions import hurwitz_by_recursion


def random_series(seed: int, order: int = 8, constant=None) -> Series:
    """Small-height random rational series; constant pins the lambda^0 term"""
    rng = random.Random(seed)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(order + 1)]
    if constant is not None:
        coeffs[0] = Fraction(constant)
    return Series(coeffs, order)


@pytest.fixture(scope='session')
def hurwitz_table():
    return hurwitz_by_recursion(3, 5)


@pytest.fixture(scope='session')
def ring():
    return DiffRing()


@pytest.fixture
def cache_path(tmp_path, monkeypatch):
    path = tmp_path / 'hurwitz_table.json'
    monkeypatch.setenv('TODA_CACHE_PATH', str(path))
    monkeypatch.delenv('TODA_ORACLE_DMAX', raising=False)
    return path


@pytest.fixture
def run_cli(cache_path, capsys):
    """Run the CLI in-process; returns (exit code, stdout)"""
    def run(*argv):
        code = cli.main(list(argv))
        return code, capsys.readouterr().out
    return run
