"""Frobenius bracket powers and Hilbert-Kunz sampling on local presentations.

A presentation is an ambient polynomial ring over F_p plus defining
relations (none for a regular ring, one for a hypersurface).  Lengths of
quotients are computed in the ambient ring by adjoining the relations.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (LEX, ContextError, MonomialOrder, Polynomial,
                      PolynomialRing, is_prime)
from .groebner import INFINITE, IdealHandle, LengthValue, colength, socle_basis


class UnsupportedRingError(ValueError):
    """Presentation outside the supported regular/hypersurface cases."""


class SearchFailureError(RuntimeError):
    """Candidate search exhausted its trial budget."""


@dataclass(frozen=True)
class FrobeniusPower:
    """q = p^e, an exact power of the ring characteristic."""

    p: int
    e: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 0:
            raise ValueError("negative Frobenius exponent")

    @property
    def q(self) -> int:
        return self.p ** self.e

    @classmethod
    def from_q(cls, q: int, p: int) -> "FrobeniusPower":
        e = 0
        m = q
        while m > 1 and m % p == 0:
            m //= p
            e += 1
        if m != 1:
            raise ValueError(f"{q} is not a power of the characteristic {p}")
        return cls(p, e)

    def __int__(self):
        return self.q


@dataclass(frozen=True)
class HKSample:
    """One Hilbert-Kunz sample: the length of R/I^[q]."""

    q: int
    length: int


@dataclass(frozen=True)
class HKEstimate:
    """Secant fit length(q) ~ hk_multiplicity*q^d + lower_coefficient*q^(d-1).

    The two largest samples pin the fit exactly; ``residual`` is the
    largest relative error of the fit over the remaining samples.
    """

    samples: tuple[HKSample, ...]
    hk_multiplicity: Fraction
    lower_coefficient: Fraction
    residual: Fraction


@dataclass(frozen=True)
class MultiplicityRecord:
    e: int
    method: str  # "order-of-relation" or "parameter-colength-limit"


class RingPresentation:
    """Ambient variables, characteristic, and defining relations."""

    def __init__(self, ambient: PolynomialRing,
                 relations: Sequence[Polynomial] = ()):
        rels = []
        for f in relations:
            if not isinstance(f, Polynomial) or f.ring != ambient:
                raise ContextError("relation from a different ring")
            if f.is_zero():
                raise ValueError("zero relation")
            if f.order_of_vanishing < 1:
                raise ValueError("relation has a unit term")
            rels.append(f)
        if ambient.nvars - len(rels) < 1:
            raise ValueError("presentation has dimension < 1")
        self.ambient = ambient
        self.relations: tuple[Polynomial, ...] = tuple(rels)

    # -- constructors -------------------------------------------------------

    @classmethod
    def regular(cls, characteristic: int, variables: Sequence[str],
                order: MonomialOrder | None = None) -> "RingPresentation":
        return cls(PolynomialRing(characteristic, variables, order))

    @classmethod
    def hypersurface(cls, characteristic: int, variables: Sequence[str],
                     relation: str,
                     order: MonomialOrder | None = None) -> "RingPresentation":
        ring = PolynomialRing(characteristic, variables, order)
        return cls(ring, [ring.from_string(relation)])

    @classmethod
    def from_dict(cls, data: dict) -> "RingPresentation":
        ring = PolynomialRing(int(data["char"]), tuple(data["vars"]))
        rels = [ring.from_string(t) for t in data.get("relations", [])]
        pres = cls(ring, rels)
        if "dim" in data and int(data["dim"]) != pres.dimension:
            raise ValueError(
                f"declared dim {data['dim']} != {pres.dimension}")
        return pres

    @classmethod
    def from_file(cls, path) -> "RingPresentation":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {"char": self.characteristic,
                "vars": list(self.variables),
                "relations": [str(f) for f in self.relations],
                "dim": self.dimension}

    # -- structure ----------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.ambient.characteristic

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ambient.variables

    @property
    def dimension(self) -> int:
        return self.ambient.nvars - len(self.relations)

    @property
    def is_regular(self) -> bool:
        return not self.relations

    @property
    def relation(self) -> Polynomial | None:
        return self.relations[0] if len(self.relations) == 1 else None

    def parse(self, text: str) -> Polynomial:
        return self.ambient.from_string(text)

    def ideal(self, *items, order: MonomialOrder | None = None) -> IdealHandle:
        polys = [self.parse(x) if isinstance(x, str) else x for x in items]
        return IdealHandle(self.ambient, polys, order)

    def maximal_ideal(self, order: MonomialOrder | None = None) -> IdealHandle:
        return IdealHandle(self.ambient, self.ambient.gens(), order)

    def __repr__(self):
        rels = ", ".join(str(f) for f in self.relations)
        return (f"RingPresentation(F_{self.characteristic}"
                f"[{', '.join(self.variables)}] / ({rels}))")


# -- operations ---------------------------------------------------------------

def bracket_power(ideal: IdealHandle, q: int | FrobeniusPower) -> IdealHandle:
    """Ideal generated by the q-th powers of the generators.

    Generator powers suffice: the q-th power map is a ring homomorphism
    in characteristic p, so it carries the whole ideal into their span.
    """
    p = ideal.ring.characteristic
    fq = q if isinstance(q, FrobeniusPower) else FrobeniusPower.from_q(q, p)
    if fq.p != p:
        raise ValueError(f"power of {fq.p} in a characteristic-{p} ring")
    return IdealHandle(ideal.ring,
                       [g.frobenius_power(fq.q) for g in ideal.generators],
                       ideal.order)


def quotient_colength(presentation: RingPresentation,
                      ideal: IdealHandle) -> LengthValue:
    """Length of R/I, computed as the ambient colength of I plus the relations.

    The count is independent of the monomial order; lex keeps the
    hypersurface relations led by their lowest-variable power, which
    makes bracket-power bases near-coprime and fast to complete.
    """
    if ideal.ring != presentation.ambient:
        raise ContextError("ideal from a different ambient ring")
    combined = IdealHandle(presentation.ambient,
                           ideal.generators + presentation.relations,
                           MonomialOrder(LEX))
    return colength(combined)


def hk_function(presentation: RingPresentation, ideal: IdealHandle,
                e_max: int) -> list[HKSample]:
    """Samples (q, length of R/I^[q]) for q = p, p^2, ..., p^e_max."""
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    p = presentation.characteristic
    samples = []
    for e in range(1, e_max + 1):
        q = p ** e
        length = quotient_colength(presentation, bracket_power(ideal, q))
        if length is INFINITE or length == 0:
            raise ValueError("ideal is not primary to the maximal ideal")
        samples.append(HKSample(q, length))
    return samples


def hk_estimate(samples: Sequence[HKSample], d: int) -> HKEstimate:
    """Exact secant through the two largest samples; residual vs the rest."""
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    ordered = sorted(samples, key=lambda s: s.q)
    (q1, l1), (q2, l2) = ((s.q, s.length) for s in ordered[-2:])
    e = Fraction(l2 * q1 ** (d - 1) - l1 * q2 ** (d - 1),
                 q1 ** (d - 1) * q2 ** (d - 1) * (q2 - q1))
    beta = (Fraction(l2) - e * q2 ** d) / q2 ** (d - 1)
    if e <= 0:
        raise ValueError("nonpositive multiplicity estimate")
    residual = Fraction(0)
    for s in ordered[:-2]:
        fit = e * s.q ** d + beta * s.q ** (d - 1)
        residual = max(residual, abs(fit - s.length) / Fraction(s.length))
    return HKEstimate(tuple(ordered), e, beta, residual)


def multiplicity(presentation: RingPresentation,
                 parameter_ideal: IdealHandle | None = None,
                 q: int | None = None) -> MultiplicityRecord:
    """Multiplicity e(R): 1 for regular rings, the order of f for hypersurfaces.

    Passing a parameter ideal cross-checks against length(R/J^[q])/q^d,
    which is exact for parameter ideals here, and records the
    parameter-colength route instead.
    """
    if len(presentation.relations) > 1:
        raise UnsupportedRingError("only regular or hypersurface presentations")
    if presentation.is_regular:
        e = 1
    else:
        e = presentation.relation.order_of_vanishing
    if parameter_ideal is None:
        return MultiplicityRecord(e, "order-of-relation")
    qq = q if q is not None else presentation.characteristic
    length = quotient_colength(presentation,
                               bracket_power(parameter_ideal, qq))
    if length is INFINITE:
        raise ValueError("cross-check ideal is not a parameter ideal")
    scaled, rem = divmod(length, qq ** presentation.dimension)
    if rem or scaled != e:
        raise ValueError(
            f"parameter cross-check failed: length {length} at q={qq} "
            f"does not equal {e}*q^{presentation.dimension}")
    return MultiplicityRecord(e, "parameter-colength-limit")


def ade_classify(presentation: RingPresentation) -> tuple[str, int] | None:
    """Match a 3-variable double-point relation against the standard forms.

    Returns ("A", n), ("D", n), ("E6", 6), ("E7", 7) or ("E8", 8) when the
    relation's support (with the declared variable roles) matches
    v0*v1 + v2^(n+1), v0^2 + v1*v2^2 + v1^(n-1), or the three E-forms.
    """
    f = presentation.relation
    if f is None or presentation.ambient.nvars != 3:
        return None
    support = set(f._terms)
    x2 = (2, 0, 0)
    for k in range(2, f.degree + 1):
        if support == {(1, 1, 0), (0, 0, k)}:
            return ("A", k - 1)
    if support == {x2, (0, 3, 0), (0, 0, 4)}:
        return ("E6", 6)
    if support == {x2, (0, 3, 0), (0, 1, 3)}:
        return ("E7", 7)
    if support == {x2, (0, 3, 0), (0, 0, 5)}:
        return ("E8", 8)
    for m in range(3, f.degree + 1):
        if support == {x2, (0, 1, 2), (0, m, 0)}:
            return ("D", m + 1)
    return None


def find_minimal_reduction(presentation: RingPresentation, trials: int = 64,
                           seed: int = 0) -> IdealHandle:
    """Parameter ideal J with length(R/J) = e(R), found deterministically.

    Fixed per-family candidates are tried first (the A-forms need odd p
    and p coprime to n+1; characteristic-2 A-type is rejected outright),
    then seed-controlled random linear forms until the trial budget runs
    out.
    """
    e = multiplicity(presentation).e
    ambient = presentation.ambient
    d = presentation.dimension
    gens = ambient.gens()

    if presentation.is_regular:
        return IdealHandle(ambient, gens)
    if e != 2:
        raise UnsupportedRingError(
            "reduction search handles regular rings and double points only")

    fixed: list[tuple[Polynomial, ...]] = []
    family = ade_classify(presentation)
    if family is not None:
        kind, n = family
        p = presentation.characteristic
        if kind == "A":
            if p == 2:
                raise UnsupportedRingError(
                    "A-type reduction candidates need odd characteristic")
            if (n + 1) % p == 0:
                raise UnsupportedRingError(
                    f"A-type needs characteristic prime to {n + 1}")
            fixed.append((gens[0] - gens[1], gens[2]))
            fixed.append((gens[0] + gens[1], gens[2]))
        else:
            fixed.append((gens[1], gens[2]))

    rng = random.Random(seed)

    def random_candidate() -> tuple[Polynomial, ...]:
        forms = []
        for _ in range(d):
            form = ambient.zero()
            while form.is_zero():
                form = sum((ambient.constant(rng.randrange(
                    presentation.characteristic)) * g for g in gens),
                    ambient.zero())
            forms.append(form)
        return tuple(forms)

    attempts = 0
    candidate: tuple[Polynomial, ...] = ()
    while attempts < trials:
        candidate = fixed[attempts] if attempts < len(fixed) \
            else random_candidate()
        attempts += 1
        handle = IdealHandle(ambient, candidate)
        if len(handle.generators) != d:
            continue
        if quotient_colength(presentation, handle) == e:
            return handle
    last = ", ".join(str(g) for g in candidate)
    raise SearchFailureError(
        f"no minimal reduction found in {trials} attempts; "
        f"last candidate ({last})")


def cm_type(presentation: RingPresentation, parameter_ideal: IdealHandle) -> int:
    """Socle dimension of R/J: the Cohen-Macaulay type witnessed by J."""
    combined = IdealHandle(presentation.ambient,
                           parameter_ideal.generators + presentation.relations,
                           MonomialOrder(LEX))
    if colength(combined) is INFINITE:
        raise ValueError("quotient by the parameter ideal is not finite")
    return len(socle_basis(combined, presentation.maximal_ideal()))
