"""
Ground-truth simple Hurwitz numbers from transposition factorizations.

H_{g,d} = (number of transitive r-tuples of transpositions in S_d with
product the identity) / d!, where r = 2g + 2d - 2.

Two backends:
    direct    enumerate every tuple, orbit check through PermutationGroup (d <= 4)
    dp-sieve  group-algebra DP over S_d indexed by lexicographic rank, then a
              set-partition sieve for transitivity (d <= oracle bound)
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations, product
from math import comb, factorial
from operator import mul
from typing import Dict, List, Tuple

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.utilities.iterables import multiset_partitions

from .errors import OracleBoundError

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_DMAX = 7
DIRECT_DMAX = 4
# words of transpositions the direct backend walks through before it is skipped in a cross-check
DIRECT_WORD_LIMIT = 2_000_000
BACKENDS = ('direct', 'dp-sieve')


@dataclass(frozen=True)
class FactorizationCount:
    d: int
    r: int
    all_count: int
    transitive_count: int


def _check_bound(d: int, r: int, max_degree: int) -> None:
    if d < 1 or r < 0:
        raise ValueError(f"need d >= 1 and r >= 0, got d={d}, r={r}")
    if d > max_degree:
        raise OracleBoundError(
            f"degree {d} exceeds the oracle bound {max_degree} (raise it with --oracle-dmax or TODA_ORACLE_DMAX)"
        )


def transpositions(d: int) -> List[Permutation]:
    return [Permutation(i, j, size=d) for i, j in combinations(range(d), 2)]


@lru_cache(maxsize=None)
def _right_multiplication_tables(d: int) -> Tuple[np.ndarray, ...]:
    """For each transposition t, an index array j -> rank(perm_j * t); ranks are lexicographic"""
    size = factorial(d)
    perms = [Permutation.unrank_lex(d, j) for j in range(size)]
    return tuple(
        np.fromiter(((p * t).rank() for p in perms), dtype=np.int64, count=size)
        for t in transpositions(d)
    )


@lru_cache(maxsize=None)
def _identity_counts(d: int, rmax: int) -> Tuple[int, ...]:
    """Entry r: number of r-tuples of transpositions multiplying to the identity"""
    size = factorial(d)
    vector = np.zeros(size, dtype=object)
    vector[0] = 1  # rank 0 is the identity
    counts = [1]
    tables = _right_multiplication_tables(d)
    for _ in range(rmax):
        if tables:
            vector = sum(vector[table] for table in tables)
        else:
            vector = np.zeros(size, dtype=object)
        counts.append(int(vector[0]))
    return tuple(counts)


def count_identity_tuples(d: int, r: int, max_degree: int = DEFAULT_ORACLE_DMAX) -> int:
    """Ordered r-tuples of transpositions in S_d with product the identity (DP backend)"""
    _check_bound(d, r, max_degree)
    return _identity_counts(d, r)[r]


@lru_cache(maxsize=None)
def _partition_shapes(d: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """(sorted block sizes, number of set partitions of {0..d-1} with that shape)"""
    shapes = Counter(tuple(sorted(len(b) for b in p)) for p in multiset_partitions(list(range(d))))
    return tuple(sorted(shapes.items()))


def _blocks_contribution(shape: Tuple[int, ...], r: int) -> int:
    """
    sum over r_1 + ... + r_m = r of multinomial(r; r_j) prod transitive(|B_j|, r_j),
    as r! times the x^r coefficient of a product of exponential generating functions
    """
    poly = [Fraction(1)] + [Fraction(0)] * r
    for size in shape:
        egf = [Fraction(_transitive_count(size, rho), factorial(rho)) for rho in range(r + 1)]
        poly = [sum(poly[i] * egf[n - i] for i in range(n + 1)) for n in range(r + 1)]
    value = poly[r] * factorial(r)
    assert value.denominator == 1
    return int(value)


@lru_cache(maxsize=None)
def _transitive_count(d: int, r: int) -> int:
    if d == 1:
        return 1 if r == 0 else 0
    if r % 2:
        return 0
    disconnected = 0
    for shape, multiplicity in _partition_shapes(d):
        if len(shape) > 1:
            disconnected += multiplicity * _blocks_contribution(shape, r)
    return _identity_counts(d, r)[r] - disconnected


def count_transitive_tuples(d: int, r: int, max_degree: int = DEFAULT_ORACLE_DMAX) -> int:
    """Transitive ordered r-tuples with product the identity (DP + set-partition sieve)"""
    _check_bound(d, r, max_degree)
    return _transitive_count(d, r)


def resum_over_partitions(d: int, r: int, max_degree: int = DEFAULT_ORACLE_DMAX) -> int:
    """Sum the transitive counts over every set partition, single block included"""
    _check_bound(d, r, max_degree)
    return sum(multiplicity * _blocks_contribution(shape, r) for shape, multiplicity in _partition_shapes(d))


def direct_word_count(d: int, r: int) -> int:
    """Number of r-tuples of transpositions the direct backend walks through"""
    return comb(d, 2) ** r


def direct_feasible(d: int, r: int) -> bool:
    return d <= DIRECT_DMAX and direct_word_count(d, r) <= DIRECT_WORD_LIMIT


def _is_transitive(word: Tuple[Permutation, ...], d: int) -> bool:
    if not word:
        return d == 1
    return PermutationGroup(list(word)).is_transitive()


def count_tuples_direct(d: int, r: int) -> Tuple[int, int]:
    """(all, transitive) by enumerating every r-tuple; only for d <= 4"""
    if d > DIRECT_DMAX:
        raise OracleBoundError(f"direct enumeration is limited to d <= {DIRECT_DMAX}, got {d}")
    _check_bound(d, r, DIRECT_DMAX)
    identity = Permutation(list(range(d)))
    all_count = transitive = 0
    for word in product(transpositions(d), repeat=r):
        if not reduce(mul, word, identity).is_Identity:
            continue
        all_count += 1
        if _is_transitive(word, d):
            transitive += 1
    return all_count, transitive


def count_identity_tuples_direct(d: int, r: int) -> int:
    return count_tuples_direct(d, r)[0]


def count_transitive_tuples_direct(d: int, r: int) -> int:
    return count_tuples_direct(d, r)[1]


def factorization_count(d: int, r: int, backend: str = 'dp-sieve',
                        max_degree: int = DEFAULT_ORACLE_DMAX) -> FactorizationCount:
    if backend == 'direct':
        all_count, transitive = count_tuples_direct(d, r)
    elif backend == 'dp-sieve':
        all_count = count_identity_tuples(d, r, max_degree)
        transitive = count_transitive_tuples(d, r, max_degree)
    else:
        raise ValueError(f"unknown oracle backend: {backend!r} (expected one of {BACKENDS})")
    return FactorizationCount(d, r, all_count, transitive)


def hurwitz_oracle(g: int, d: int, backend: str = 'dp-sieve',
                   max_degree: int = DEFAULT_ORACLE_DMAX) -> Fraction:
    """H_{g,d} = transitive(d, 2g+2d-2) / d!"""
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g}")
    count = factorization_count(d, 2 * g + 2 * d - 2, backend, max_degree)
    logger.info(f"🔢 Oracle ({backend}) H_{{{g},{d}}}: {count.transitive_count} transitive of {count.all_count}")
    return Fraction(count.transitive_count, factorial(d))


def hurwitz_oracle_table(gmax: int, dmax: int, backend: str = 'dp-sieve',
                         max_degree: int = DEFAULT_ORACLE_DMAX) -> Dict[Tuple[int, int], Fraction]:
    if dmax > max_degree:
        raise OracleBoundError(f"degree {dmax} exceeds the oracle bound {max_degree}")
    return {(g, d): hurwitz_oracle(g, d, backend, max_degree)
            for g in range(gmax + 1) for d in range(1, dmax + 1)}


def hurwitz_genus0_closed(d: int) -> Fraction:
    """Hurwitz's genus-0 count d^{d-3} (2d-2)! / d!"""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    return Fraction(d) ** (d - 3) * factorial(2 * d - 2) / factorial(d)
