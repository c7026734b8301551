"""F-signature sampling via the two-colength identity, and the inequality
checkers that the signature satisfies against multiplicities.

One sample at q compares the colengths of R/J^[q] and R/(J, Delta)^[q]
for a minimal reduction J and a socle representative Delta of R/J; the
difference counts the free summands split off by the q-th root of R.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LEX, MonomialOrder, Polynomial
from .frobenius import (FrobeniusPower, IdealHandle, RingPresentation,
                        ade_classify, bracket_power, find_minimal_reduction,
                        quotient_colength)
from .groebner import INFINITE, normal_form, socle_basis

_MIN_CHAR = {"A": 2, "D": 3, "E6": 5, "E7": 5, "E8": 7}


@dataclass(frozen=True)
class AdeSpec:
    """One row of the double-point table: family, index, characteristic."""

    family: str
    n: int | None
    p: int

    def __post_init__(self):
        if self.family not in _MIN_CHAR:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "A":
            if self.n is None or self.n < 1:
                raise ValueError("A-family index must be at least 1")
        elif self.family == "D":
            if self.n is None or self.n < 4:
                raise ValueError("D-family index must be at least 4")
        else:
            expected = int(self.family[1])
            if self.n is None:
                object.__setattr__(self, "n", expected)
            elif self.n != expected:
                raise ValueError(f"{self.family} has fixed index {expected}")

    @property
    def min_characteristic(self) -> int:
        return _MIN_CHAR[self.family]

    @property
    def expected(self) -> Fraction:
        if self.family == "A":
            return Fraction(1, self.n + 1)
        if self.family == "D":
            return Fraction(1, 4 * (self.n - 2))
        return {"E6": Fraction(1, 24), "E7": Fraction(1, 48),
                "E8": Fraction(1, 120)}[self.family]

    def equation(self, variables: tuple[str, str, str] = ("x", "y", "z")) -> str:
        a, b, c = variables
        if self.family == "A":
            return f"{a}*{b} + {c}^{self.n + 1}"
        if self.family == "D":
            return f"{a}^2 + {b}*{c}^2 + {b}^{self.n - 1}"
        tail = {"E6": f"{c}^4", "E7": f"{b}*{c}^3", "E8": f"{c}^5"}[self.family]
        return f"{a}^2 + {b}^3 + {tail}"

    def ring(self, variables: tuple[str, str, str] = ("x", "y", "z")
             ) -> RingPresentation:
        return RingPresentation.hypersurface(self.p, variables,
                                             self.equation(variables))

    @classmethod
    def from_ring(cls, presentation: RingPresentation) -> "AdeSpec | None":
        match = ade_classify(presentation)
        if match is None:
            return None
        family, n = match
        return cls(family, n, presentation.characteristic)

    @property
    def label(self) -> str:
        if self.family in ("A", "D"):
            return f"{self.family}{self.n}"
        return self.family


def ade_expected(spec: AdeSpec) -> Fraction:
    """Table value of the signature; errors if the characteristic is too small."""
    if spec.p < spec.min_characteristic:
        raise ValueError(
            f"table row {spec.label} requires characteristic "
            f">= {spec.min_characteristic}, got {spec.p}")
    return spec.expected


@dataclass(frozen=True)
class FreeRankSample:
    """Free-summand count of the q-th root at one q, with both colengths."""

    q: int
    free_rank: int            # wire key "a1q"
    ratio: Fraction           # wire key "s_q", equals free_rank / q^d
    param_colength: int       # wire key "lenJ"
    extended_colength: int    # wire key "lenJD"


@dataclass(frozen=True)
class FSignatureEstimate:
    """Sample trail plus the ratio at the largest q (no extrapolation)."""

    samples: tuple[FreeRankSample, ...]
    signature: Fraction
    trend: tuple[Fraction, ...]
    reduction: IdealHandle
    socle_rep: Polynomial


@dataclass(frozen=True)
class InequalityReport:
    holds: bool
    slack: Fraction
    equality: bool


def free_rank_sample(presentation: RingPresentation, reduction: IdealHandle,
                     delta: Polynomial, q: int | FrobeniusPower
                     ) -> FreeRankSample:
    """a1q = len(R/J^[q]) - len(R/(J,Delta)^[q]) and its normalized ratio."""
    p = presentation.characteristic
    fq = q if isinstance(q, FrobeniusPower) else FrobeniusPower.from_q(q, p)
    combined = IdealHandle(presentation.ambient,
                           reduction.generators + presentation.relations,
                           MonomialOrder(LEX))
    if normal_form(delta, combined).is_zero():
        raise ValueError("socle representative lies in the parameter ideal")
    len_param = quotient_colength(presentation, bracket_power(reduction, fq))
    extended = reduction.extended(delta)
    len_ext = quotient_colength(presentation, bracket_power(extended, fq))
    if len_param is INFINITE or len_ext is INFINITE:
        raise ValueError("parameter ideal does not have finite colength")
    free = len_param - len_ext
    ratio = Fraction(free, fq.q ** presentation.dimension)
    if not 0 <= ratio <= 1:
        raise RuntimeError(f"free-rank ratio {ratio} escapes [0, 1]")
    return FreeRankSample(fq.q, free, ratio, len_param, len_ext)


def fsignature_estimate(presentation: RingPresentation, e_max: int,
                        trials: int = 64, seed: int = 0) -> FSignatureEstimate:
    """Estimate the signature from samples at q = p, ..., p^e_max.

    Reports the raw ratio at the largest q rather than extrapolating; the
    per-sample deviations from that value ride along as ``trend``.
    """
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    reduction = find_minimal_reduction(presentation, trials=trials, seed=seed)
    combined = IdealHandle(presentation.ambient,
                           reduction.generators + presentation.relations,
                           MonomialOrder(LEX))
    delta = socle_basis(combined, presentation.maximal_ideal())[0]
    p = presentation.characteristic
    samples = tuple(free_rank_sample(presentation, reduction, delta, p ** e)
                    for e in range(1, e_max + 1))
    signature = samples[-1].ratio
    trend = tuple(abs(s.ratio - signature) for s in samples)
    return FSignatureEstimate(samples, signature, trend, reduction, delta)


def regularity_check(presentation: RingPresentation, e_max: int = 2,
                     trials: int = 64, seed: int = 0) -> bool:
    """True iff every sampled ratio is exactly 1 (signature-one criterion)."""
    estimate = fsignature_estimate(presentation, e_max, trials=trials,
                                   seed=seed)
    flag = all(s.ratio == 1 for s in estimate.samples)
    if flag != presentation.is_regular:
        raise RuntimeError(
            "signature samples disagree with the presentation: "
            f"ratios {[str(s.ratio) for s in estimate.samples]} on "
            f"{presentation!r}")
    return flag


def check_lower_inequality(e: int, s: Fraction, ehk: Fraction
                           ) -> InequalityReport:
    """Check (e-1)(1-s) >= ehk - 1 and report the exact slack."""
    if e < 1:
        raise ValueError("multiplicity must be at least 1")
    s = Fraction(s)
    ehk = Fraction(ehk)
    if not 0 <= s <= 1:
        raise ValueError("signature outside [0, 1]")
    if ehk < 1:
        raise ValueError("Hilbert-Kunz multiplicity below 1")
    slack = (e - 1) * (1 - s) - (ehk - 1)
    return InequalityReport(slack >= 0, slack, slack == 0)


def check_upper_bound(s: Fraction, ehk_inner: Fraction, ehk_outer: Fraction,
                      len_between: int) -> InequalityReport:
    """Check s <= (ehk(I) - ehk(J)) / len(J/I) for nested primary ideals.

    Equality is flagged; it is attained when I is a minimal reduction and
    J adjoins a socle representative.
    """
    if len_between <= 0:
        raise ValueError("len(J/I) must be positive")
    bound = (Fraction(ehk_inner) - Fraction(ehk_outer)) / len_between
    slack = bound - Fraction(s)
    return InequalityReport(slack >= 0, slack, slack == 0)
