"""Exact combinatorics of degree-n Veronese Frobenius decompositions.

Everything here is integer lattice counting: the number m_k of exponent
pairs (a, b) in [0, p)^2 with a + b = k mod n determines how the p-th
root of each fractional-ideal module splits, and the resulting circulant
matrix iterates to the signature limit 1/n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import is_prime


@dataclass(frozen=True)
class VeroneseSpec:
    """Veronese degree n and a characteristic p prime to n."""

    n: int
    p: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Veronese degree must be at least 1")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if gcd(self.p, self.n) != 1:
            raise ValueError(f"characteristic {self.p} divides n = {self.n}")


@dataclass(frozen=True)
class DecompositionMatrix:
    """Row i, column j: multiplicity of the j-th module class inside the
    p-th root of the i-th (index 0 is the ring itself)."""

    p: int
    n: int
    rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BoundsReport:
    passed: bool
    floor: int
    remainder: int
    violations: tuple[str, ...]


@dataclass(frozen=True)
class GroupOrderReport:
    expected_order: int
    computed: Fraction
    tolerance: Fraction
    passed: bool


def mk_count(p: int, n: int, k: int) -> int:
    """#{(a, b) : 0 <= a, b < p, a + b = k mod n}, tallied in O(p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("modulus must be at least 1")
    if not 0 <= k < n:
        raise ValueError(f"residue {k} outside [0, {n})")
    total = 0
    for a in range(p):
        r = (k - a) % n
        total += (p - 1 - r) // n + 1 if r < p else 0
    return total


def decomposition_matrix(spec: VeroneseSpec) -> DecompositionMatrix:
    """Circulant matrix a_ij = m_{(i-j) mod n}; every row sums to p^2."""
    m = [mk_count(spec.p, spec.n, k) for k in range(spec.n)]
    rows = tuple(tuple(m[(i - j) % spec.n] for j in range(spec.n))
                 for i in range(spec.n))
    return DecompositionMatrix(spec.p, spec.n, rows)


def bounds_check(matrix: DecompositionMatrix) -> BoundsReport:
    """Row sums, the floor/remainder entry window, and cyclic unit steps."""
    p, n = matrix.p, matrix.n
    square = p * p
    floor, remainder = divmod(square, n)
    violations: list[str] = []
    for i, row in enumerate(matrix.rows):
        if sum(row) != square:
            violations.append(f"row {i} sums to {sum(row)}, expected {square}")
        for j, entry in enumerate(row):
            if not floor <= entry <= floor + remainder:
                violations.append(
                    f"entry ({i},{j}) = {entry} outside "
                    f"[{floor}, {floor + remainder}]")
    m = [matrix.rows[k][0] for k in range(n)]
    if sum(m) != square:
        violations.append(f"class counts sum to {sum(m)}, expected {square}")
    for k in range(n):
        if abs(m[k] - m[k - 1]) > 1:
            violations.append(
                f"|m_{k} - m_{(k - 1) % n}| = {abs(m[k] - m[k - 1])} > 1")
    return BoundsReport(not violations, floor, remainder, tuple(violations))


def power_limit(matrix: DecompositionMatrix, s_max: int) -> list[Fraction]:
    """Exact (A^s)[0][0] / p^(2s) for s = 1..s_max (big-integer powering)."""
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    n = matrix.n
    square = matrix.p * matrix.p
    current = [list(row) for row in matrix.rows]
    base = [list(row) for row in matrix.rows]
    values = []
    for s in range(1, s_max + 1):
        values.append(Fraction(current[0][0], square ** s))
        if s < s_max:
            current = [[sum(current[i][k] * base[k][j] for k in range(n))
                        for j in range(n)] for i in range(n)]
    return values


def group_order_check(spec: VeroneseSpec, s: Fraction,
                      tolerance: Fraction = Fraction(1, 100)
                      ) -> GroupOrderReport:
    """The covering ring splits off one free summand, so 1/s should be n."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("signature value must be positive")
    computed = 1 / s
    passed = abs(computed - spec.n) <= tolerance
    return GroupOrderReport(spec.n, computed, Fraction(tolerance), passed)
