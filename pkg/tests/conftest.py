from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from frobkit import IdealHandle, PolynomialRing, RingPresentation

ADE_ROWS = [("A", 1, 3), ("A", 2, 5), ("D", 4, 3),
            ("E6", 6, 5), ("E7", 7, 5), ("E8", 8, 7)]

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def ring_f5_xy() -> PolynomialRing:
    return PolynomialRing(5, ("x", "y"))


@pytest.fixture
def regular_f2() -> RingPresentation:
    return RingPresentation.regular(2, ("x", "y"))


def random_monomial_ideal(ring: PolynomialRing, rng: random.Random,
                          max_exp: int = 6, extras: int = 3) -> IdealHandle:
    """Random zero-dimensional monomial ideal: pure-power box plus a few
    mixed monomials strictly inside it."""
    n = ring.nvars
    box = [rng.randint(1, max_exp) for _ in range(n)]
    gens = []
    for v, b in enumerate(box):
        exps = [0] * n
        exps[v] = b
        gens.append(ring.monomial(exps))
    for _ in range(rng.randint(0, extras)):
        exps = [rng.randint(0, max(0, b - 1)) for b in box]
        if any(exps):
            gens.append(ring.monomial(exps))
    return IdealHandle(ring, gens)
