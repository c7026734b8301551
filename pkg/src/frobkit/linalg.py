"""Dense linear algebra mod p on int64 numpy arrays.

Entries stay below p at rest, so intermediate products fit in int64 for
any word-size prime.  All routines are deterministic.
"""

from __future__ import annotations

import numpy as np


def _as_array(mat, width: int | None = None) -> np.ndarray:
    a = np.array(mat, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, width or 0)
    if a.size == 0 and width is not None:
        a = a.reshape(0, width)
    return a


def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    a = _as_array(mat) % p
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0), []
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat, p: int) -> int:
    return len(rref(mat, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Canonical basis (rows) of the right kernel of ``mat`` mod p."""
    a = _as_array(mat)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    cols = a.shape[1]
    reduced, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-reduced[r, fc]) % p
    if basis.shape[0]:
        basis, _ = rref(basis, p)
    return basis


def in_row_span(generators, vectors, p: int) -> bool:
    """True iff every row of ``vectors`` lies in the row span of ``generators``."""
    g = _as_array(generators)
    v = _as_array(vectors, width=g.shape[1] if g.ndim == 2 else None)
    if v.shape[0] == 0:
        return True
    if g.shape[0] == 0:
        return not np.any(v % p)
    if g.shape[1] != v.shape[1]:
        raise ValueError("width mismatch")
    base = rank(g, p)
    return rank(np.vstack([g, v]), p) == base
