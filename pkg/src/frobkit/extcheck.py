"""Matrix factorizations of hypersurfaces and truncated first-Ext data.

A factorization (phi, psi) with phi*psi = psi*phi = f*Id presents the
module M = coker(phi), whose free resolution over the hypersurface ring
alternates psi and phi forever.  First-Ext classes against N = coker(phiN)
are matrices U over the ambient polynomial ring with U*psiM = phiN*A for
some A; coboundaries are phiN*H + K*phiM.  Both spaces become finite
F_p-linear problems once entry degrees are capped at t, and a reported
(length, annihilator) is accepted only when two consecutive caps agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from . import linalg
from .algebra import ContextError, Polynomial, PolynomialRing


class _Unstable:
    """Marker: truncations did not agree within the degree budget."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNSTABLE"


UNSTABLE = _Unstable()

ExtValue = Union[int, _Unstable]


@lru_cache(maxsize=None)
def _monomials(nvars: int, bound: int) -> tuple[tuple[tuple[int, ...], ...], dict]:
    """All exponent vectors of total degree <= bound, with an index map."""
    mons: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 0:
            mons.append(prefix)
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), bound, nvars)
    mons.sort(key=lambda e: (sum(e), e))
    return tuple(mons), {e: i for i, e in enumerate(mons)}


def _entry_degree(rows: Sequence[Sequence[Polynomial]]) -> int:
    return max((p.degree for row in rows for p in row), default=0)


@dataclass(frozen=True)
class MatrixFactorization:
    """Square matrix pair over the ambient ring with phi*psi = psi*phi = f*Id."""

    ring: PolynomialRing
    f: Polynomial
    phi: tuple[tuple[Polynomial, ...], ...]
    psi: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(tuple(r) for r in self.phi))
        object.__setattr__(self, "psi", tuple(tuple(r) for r in self.psi))
        size = len(self.phi)
        for mat in (self.phi, self.psi):
            if len(mat) != size or any(len(row) != size for row in mat):
                raise ValueError("factorization matrices must be square "
                                 "of equal size")
        if size == 0:
            raise ValueError("empty factorization")
        for mat in (self.phi, self.psi):
            for row in mat:
                for entry in row:
                    if entry.ring != self.ring:
                        raise ContextError("entry from a different ring")
        if self.f.ring != self.ring or self.f.is_zero():
            raise ValueError("relation must be a nonzero ambient polynomial")

    @property
    def size(self) -> int:
        return len(self.phi)

    @classmethod
    def from_dict(cls, data: dict, ring: PolynomialRing) -> "MatrixFactorization":
        size = int(data["size"])
        f = ring.from_string(data["f"])
        phi = tuple(tuple(ring.from_string(s) for s in row)
                    for row in data["phi"])
        psi = tuple(tuple(ring.from_string(s) for s in row)
                    for row in data["psi"])
        mf = cls(ring, f, phi, psi)
        if mf.size != size:
            raise ValueError(f"declared size {size} != {mf.size}")
        return mf

    @classmethod
    def from_file(cls, path, ring: PolynomialRing) -> "MatrixFactorization":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh), ring)

    def swapped(self) -> "MatrixFactorization":
        """The shifted factorization (psi, phi), presenting the syzygy module."""
        return MatrixFactorization(self.ring, self.f, self.psi, self.phi)

    def to_dict(self) -> dict:
        return {"f": str(self.f), "size": self.size,
                "phi": [[str(p) for p in row] for row in self.phi],
                "psi": [[str(p) for p in row] for row in self.psi]}


def _matmul(a, b, ring: PolynomialRing):
    size = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(size)), ring.zero())
             for j in range(size)] for i in range(size)]


def mf_validate(mf: MatrixFactorization) -> bool:
    """True iff both products equal f times the identity, exactly."""
    ring = mf.ring
    for prod in (_matmul(mf.phi, mf.psi, ring), _matmul(mf.psi, mf.phi, ring)):
        for i in range(mf.size):
            for j in range(mf.size):
                expected = mf.f if i == j else ring.zero()
                if prod[i][j] != expected:
                    return False
    return True


@dataclass(frozen=True)
class ExtReport:
    """Length and annihilator data for one Ext computation.

    ``length`` and ``annihilator_exponent`` are ints or UNSTABLE; the
    exponent is None when it was not requested.
    """

    length: ExtValue
    annihilator_exponent: ExtValue | None
    truncation_degree_used: int

    @property
    def stable(self) -> bool:
        return self.length is not UNSTABLE and \
            self.annihilator_exponent is not UNSTABLE


@dataclass(frozen=True)
class WitnessReport:
    passed: bool
    bound: int
    report: ExtReport


class _ExtProblem:
    def __init__(self, mf_m: MatrixFactorization, mf_n: MatrixFactorization):
        if mf_m.ring != mf_n.ring:
            raise ContextError("factorizations over different rings")
        if mf_m.f != mf_n.f:
            raise ValueError("factorizations of different relations")
        if not mf_validate(mf_m) or not mf_validate(mf_n):
            raise ValueError("invalid matrix factorization")
        self.ring = mf_m.ring
        self.p = self.ring.characteristic
        self.nvars = self.ring.nvars
        self.m = mf_m.size
        self.n = mf_n.size
        self.psi_m = mf_m.psi
        self.phi_m = mf_m.phi
        self.phi_n = mf_n.phi
        self.d_psi_m = _entry_degree(mf_m.psi)
        self.d_phi_m = _entry_degree(mf_m.phi)
        self.d_phi_n = _entry_degree(mf_n.phi)

    def _coords(self, bound: int):
        return _monomials(self.nvars, bound)

    # -- cocycles ------------------------------------------------------------

    def cocycle_basis(self, t: int) -> np.ndarray:
        """Canonical basis of {U, entries deg <= t : U*psiM in phiN*(...)}.

        Rows are coefficient vectors over (row, col, monomial <= t).
        """
        t_aux = t + self.d_psi_m + (self.n - 1) * self.d_phi_n
        t_cond = max(t + self.d_psi_m, t_aux + self.d_phi_n)
        mons_u, _ = self._coords(t)
        mons_a, _ = self._coords(t_aux)
        mons_c, idx_c = self._coords(t_cond)
        nm = self.n * self.m
        u_cols = nm * len(mons_u)
        a_cols = nm * len(mons_a)
        rows = nm * len(mons_c)
        mat = np.zeros((rows, u_cols + a_cols), dtype=np.int64)

        def row_of(i: int, c: int, exps: tuple[int, ...]) -> int:
            return (i * self.m + c) * len(mons_c) + idx_c[exps]

        col = 0
        for i in range(self.n):
            for j in range(self.m):
                for mu in mons_u:
                    for c in range(self.m):
                        for e, coef in self.psi_m[j][c]._terms.items():
                            shifted = tuple(a + b for a, b in zip(mu, e))
                            mat[row_of(i, c, shifted), col] += coef
                    col += 1
        for k in range(self.n):
            for c in range(self.m):
                for mi, mu in enumerate(mons_a):
                    acol = u_cols + ((k * self.m + c) * len(mons_a) + mi)
                    for i in range(self.n):
                        for e, coef in self.phi_n[i][k]._terms.items():
                            shifted = tuple(a + b for a, b in zip(mu, e))
                            mat[row_of(i, c, shifted), acol] -= coef
        mat %= self.p
        kernel = linalg.nullspace(mat, self.p)
        if kernel.shape[0] == 0:
            return np.zeros((0, u_cols), dtype=np.int64)
        u_part = kernel[:, :u_cols]
        reduced, _ = linalg.rref(u_part, self.p)
        return reduced

    # -- coboundaries ----------------------------------------------------------

    def coboundary_rows(self, level: int) -> tuple[np.ndarray, int]:
        """Span rows of {phiN*H + K*phiM : H, K entries deg <= level},
        over coordinates of degree <= level + max entry degree."""
        bound = level + max(self.d_phi_n, self.d_phi_m)
        mons_h, _ = self._coords(level)
        mons_b, idx_b = self._coords(bound)
        nm = self.n * self.m
        width = nm * len(mons_b)
        rows = np.zeros((2 * nm * len(mons_h), width), dtype=np.int64)

        def coord(i: int, c: int, exps: tuple[int, ...]) -> int:
            return (i * self.m + c) * len(mons_b) + idx_b[exps]

        r = 0
        for a in range(self.n):
            for b in range(self.m):
                for mu in mons_h:
                    for i in range(self.n):
                        for e, coef in self.phi_n[i][a]._terms.items():
                            shifted = tuple(x + y for x, y in zip(mu, e))
                            rows[r, coord(i, b, shifted)] += coef
                    r += 1
        for a in range(self.n):
            for b in range(self.m):
                for mu in mons_h:
                    for c in range(self.m):
                        for e, coef in self.phi_m[b][c]._terms.items():
                            shifted = tuple(x + y for x, y in zip(mu, e))
                            rows[r, coord(a, c, shifted)] += coef
                    r += 1
        return rows % self.p, bound

    def length_at(self, t: int) -> tuple[int, np.ndarray]:
        z = self.cocycle_basis(t)
        g, bound = self.coboundary_rows(t)
        mons_b, _ = self._coords(bound)
        high = [k for k, e in enumerate(mons_b) if sum(e) > t]
        nm = self.n * self.m
        high_cols = [blk * len(mons_b) + k for blk in range(nm) for k in high]
        full_rank = linalg.rank(g, self.p)
        high_rank = linalg.rank(g[:, high_cols], self.p) if high_cols else 0
        b_dim = full_rank - high_rank
        length = z.shape[0] - b_dim
        if length < 0:
            raise RuntimeError("truncated coboundaries exceed cocycles")
        return length, z

    def shift_cocycles(self, z: np.ndarray, t: int, mu: tuple[int, ...],
                       bound: int) -> np.ndarray:
        """Coefficient vectors of mu * (each cocycle), over degree <= bound."""
        mons_t, _ = self._coords(t)
        mons_b, idx_b = self._coords(bound)
        nm = self.n * self.m
        out = np.zeros((z.shape[0], nm * len(mons_b)), dtype=np.int64)
        for blk in range(nm):
            for k, e in enumerate(mons_t):
                shifted = tuple(a + b for a, b in zip(e, mu))
                src = blk * len(mons_t) + k
                dst = blk * len(mons_b) + idx_b[shifted]
                out[:, dst] = z[:, src]
        return out

    def exponent_at(self, t: int, length: int, z: np.ndarray) -> int | None:
        """Smallest a <= length with every degree-a product killing Ext."""
        for a in range(length + 1):
            g, bound = self.coboundary_rows(t + a)
            mons_all, _ = self._coords(a)
            products = [e for e in mons_all if sum(e) == a]
            ok = True
            for mu in products:
                tests = self.shift_cocycles(z, t, mu, bound)
                if not linalg.in_row_span(g, tests, self.p):
                    ok = False
                    break
            if ok:
                return a
        return None


def ext1_length(mf_m: MatrixFactorization, mf_n: MatrixFactorization,
                t_max: int = 12) -> ExtReport:
    """Length of first Ext, accepted when consecutive truncations agree."""
    problem = _ExtProblem(mf_m, mf_n)
    previous: int | None = None
    for t in range(1, t_max + 1):
        current, _ = problem.length_at(t)
        if previous == current:
            return ExtReport(current, None, t)
        previous = current
    return ExtReport(UNSTABLE, None, t_max)


def annihilator_exponent(mf_m: MatrixFactorization,
                         mf_n: MatrixFactorization,
                         t_max: int = 12) -> ExtReport:
    """Smallest a with every degree-a variable product killing first Ext."""
    problem = _ExtProblem(mf_m, mf_n)
    previous: tuple[int, int | None] | None = None
    for t in range(1, t_max + 1):
        length, z = problem.length_at(t)
        exponent = problem.exponent_at(t, length, z)
        current = (length, exponent)
        if previous == current and exponent is not None:
            if exponent > length:
                raise RuntimeError("annihilator exponent exceeds length")
            return ExtReport(length, exponent, t)
        previous = current
    return ExtReport(UNSTABLE, UNSTABLE, t_max)


def theorem_main_witness(mf_m: MatrixFactorization,
                         mf_n: MatrixFactorization, h: int,
                         t_max: int = 12) -> WitnessReport:
    """PASS iff the annihilator exponent is at most the supplied class count.

    ``h`` comes from an external classification of module classes; it is
    never computed here.
    """
    if h < 0:
        raise ValueError("class count must be nonnegative")
    report = annihilator_exponent(mf_m, mf_n, t_max)
    passed = report.stable and report.annihilator_exponent <= h
    return WitnessReport(passed, h, report)


def multiplication_lands_in(mf: MatrixFactorization, multiplier: Polynomial,
                            ideal_gens: Sequence[Polynomial],
                            degree: int) -> bool:
    """Whether multiplier * coker(phi) lands in (ideal_gens) * coker(phi).

    Membership of multiplier*e_i in the span of ideal-generator multiples,
    phi columns, and f multiples, with coefficient degrees capped; a True
    answer is conclusive, a False one may flip at a larger cap.
    """
    ring = mf.ring
    if multiplier.ring != ring:
        raise ContextError("multiplier from a different ring")
    gens = list(ideal_gens) + [mf.f]
    for g in gens:
        if g.ring != ring:
            raise ContextError("ideal generator from a different ring")
    top = degree + max(_entry_degree(mf.phi),
                       max(g.degree for g in gens), multiplier.degree)
    mons_d, _ = _monomials(ring.nvars, degree)
    mons_b, idx_b = _monomials(ring.nvars, top)
    size = mf.size
    width = size * len(mons_b)

    def vec_of(column: dict[int, Polynomial]) -> np.ndarray:
        row = np.zeros(width, dtype=np.int64)
        for i, poly in column.items():
            for e, coef in poly._terms.items():
                row[i * len(mons_b) + idx_b[e]] = coef
        return row

    rows = []
    for mu in mons_d:
        shift = ring.monomial(mu)
        for j in range(size):
            rows.append(vec_of({i: shift * mf.phi[i][j] for i in range(size)}))
        for g in gens:
            scaled = shift * g
            for i in range(size):
                rows.append(vec_of({i: scaled}))
    tests = [vec_of({i: multiplier}) for i in range(size)]
    return linalg.in_row_span(np.array(rows), np.array(tests),
                              ring.characteristic)
