from __future__ import annotations

from fractions import Fraction

import pytest

from frobkit import (VeroneseSpec, bounds_check, decomposition_matrix,
                     group_order_check, mk_count, power_limit)

from oracles import mk_bruteforce

PRIMES_UNDER_50 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_spec_validation():
    with pytest.raises(ValueError):
        VeroneseSpec(n=3, p=9)
    with pytest.raises(ValueError):
        VeroneseSpec(n=0, p=5)
    with pytest.raises(ValueError):
        VeroneseSpec(n=6, p=3)  # p divides n
    assert VeroneseSpec(n=1, p=2).n == 1


def test_mk_examples():
    assert mk_count(5, 3, 0) == 8
    assert mk_count(2, 1, 0) == 4
    assert mk_count(7, 4, 2) == mk_bruteforce(7, 4)[2]
    with pytest.raises(ValueError):
        mk_count(5, 3, 3)
    with pytest.raises(ValueError):
        mk_count(5, 3, -1)


def test_mk_matches_bruteforce_sweep():
    for p in PRIMES_UNDER_50:
        for n in range(1, 13):
            counts = mk_bruteforce(p, n)
            for k in range(n):
                assert mk_count(p, n, k) == counts[k]


def test_golden_matrix_p5_n3():
    matrix = decomposition_matrix(VeroneseSpec(n=3, p=5))
    assert matrix.rows == ((8, 8, 9), (9, 8, 8), (8, 9, 8))
    report = bounds_check(matrix)
    assert report.passed and report.remainder == 1


def test_trivial_and_p7_matrices():
    assert decomposition_matrix(VeroneseSpec(n=1, p=2)).rows == ((4,),)
    matrix = decomposition_matrix(VeroneseSpec(n=3, p=7))
    for row in matrix.rows:
        assert sum(row) == 49
        assert all(16 <= v <= 17 for v in row)


def test_bounds_sweep():
    # Row sums, cyclic unit steps and the class counts are exact facts
    # and hold at every sweep point.  The floor/remainder entry window
    # is a looser estimate that genuinely fails on a minority of points
    # (first at p=3, n=7, where residue classes are empty); the checker
    # must report those honestly and pass everywhere else.
    failed = set()
    for p in PRIMES_UNDER_50:
        for n in range(1, 13):
            if n % p == 0:
                continue  # the coprimality hypothesis excludes these
            matrix = decomposition_matrix(VeroneseSpec(n=n, p=p))
            counts = mk_bruteforce(p, n)
            for k in range(n):
                assert matrix.rows[k][0] == counts[k]
            report = bounds_check(matrix)
            assert sum(counts) == p * p
            for violation in report.violations:
                assert "outside" in violation  # only window misses, ever
            if not report.passed:
                failed.add((p, n))
    assert (3, 7) in failed and (5, 8) in failed
    assert (5, 3) not in failed and (7, 3) not in failed
    # every failure sits where the triangle of pair sums folds unevenly
    # over the classes; small windows r < n - 1 are the fragile ones
    for p, n in failed:
        assert (p * p) % n < n - 1


def test_power_limit_examples():
    matrix = decomposition_matrix(VeroneseSpec(n=3, p=5))
    values = power_limit(matrix, 6)
    assert values[0] == Fraction(8, 25)
    assert abs(values[5] - Fraction(1, 3)) <= Fraction(1, 1000)
    gaps = [abs(v - Fraction(1, 3)) for v in values]
    assert all(a >= b for a, b in zip(gaps[1:], gaps[2:]))
    ones = power_limit(decomposition_matrix(VeroneseSpec(n=1, p=2)), 4)
    assert all(v == 1 for v in ones)


def test_power_limit_convergence_sweep():
    for p in (5, 7, 11):
        for n in (2, 3, 4, 5, 6):
            if p % n == 0:
                continue
            matrix = decomposition_matrix(VeroneseSpec(n=n, p=p))
            values = power_limit(matrix, 6)
            gaps = [abs(v - Fraction(1, n)) for v in values]
            assert all(a >= b for a, b in zip(gaps[1:], gaps[2:]))
            assert gaps[-1] <= Fraction(1, 1000)


def test_group_order_examples():
    spec = VeroneseSpec(n=3, p=5)
    limit = power_limit(decomposition_matrix(spec), 6)[-1]
    report = group_order_check(spec, limit)
    assert report.passed and report.expected_order == 3

    trivial = VeroneseSpec(n=1, p=2)
    assert group_order_check(trivial, Fraction(1)).passed

    big = VeroneseSpec(n=5, p=7)
    limit5 = power_limit(decomposition_matrix(big), 6)[-1]
    report5 = group_order_check(big, limit5)
    assert report5.passed
    assert abs(report5.computed - 5) <= Fraction(1, 100)


def test_group_order_rejects_nonpositive():
    with pytest.raises(ValueError):
        group_order_check(VeroneseSpec(n=3, p=5), Fraction(0))
