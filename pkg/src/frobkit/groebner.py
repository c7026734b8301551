"""Buchberger engine over F_p.

Reduced Groebner bases with sugar-strategy pair selection and both
classical skip criteria, normal forms, staircase colength counting,
colon ideals by single-variable elimination, and socle bases of
Artinian quotients.  Pair selection ties break by generator index, so
bases are reproducible run to run.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence, Union

import numpy as np

from . import linalg
from .algebra import (LEX, ContextError, Monomial, MonomialOrder, Polynomial,
                      PolynomialRing)


class _Infinite:
    """Marker for infinite colength (non-Artinian quotient)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()

LengthValue = Union[int, _Infinite]


# -- raw term-dict helpers ----------------------------------------------------

def _axpy(dst: dict, coeff: int, shift: tuple[int, ...], src: dict, p: int):
    # dst += coeff * x^shift * src, in place
    for e, c in src.items():
        k = tuple(a + b for a, b in zip(e, shift))
        v = (dst.get(k, 0) + coeff * c) % p
        if v:
            dst[k] = v
        else:
            dst.pop(k, None)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _monic(terms: dict, lead: tuple[int, ...], p: int) -> dict:
    c = terms[lead]
    if c == 1:
        return terms
    inv = pow(c, -1, p)
    return {e: (v * inv) % p for e, v in terms.items()}


def _normal_form_raw(f: dict, reducers: Sequence[tuple[tuple[int, ...], dict]],
                     key, p: int) -> dict:
    """Full remainder of f modulo monic reducers, scanned in list order."""
    work = dict(f)
    out: dict[tuple[int, ...], int] = {}
    while work:
        lead = max(work, key=key)
        c = work[lead]
        for lt, g in reducers:
            if _divides(lt, lead):
                shift = tuple(a - b for a, b in zip(lead, lt))
                _axpy(work, -c, shift, g, p)
                break
        else:
            del work[lead]
            out[lead] = c
    return out


def _s_poly(lt_i, g_i, lt_j, g_j, p: int) -> dict:
    lcm = tuple(max(a, b) for a, b in zip(lt_i, lt_j))
    s: dict[tuple[int, ...], int] = {}
    _axpy(s, 1, tuple(a - b for a, b in zip(lcm, lt_i)), g_i, p)
    _axpy(s, -1, tuple(a - b for a, b in zip(lcm, lt_j)), g_j, p)
    return s


def _buchberger(generators: list[dict], key, p: int) -> list[dict]:
    basis: list[dict] = []
    leads: list[tuple[int, ...]] = []
    sugars: list[int] = []
    for g in generators:
        if not g:
            continue
        lt = max(g, key=key)
        basis.append(_monic(g, lt, p))
        leads.append(lt)
        sugars.append(max(sum(e) for e in g))

    pending: set[tuple[int, int]] = set()
    heap: list[tuple[int, int, int]] = []

    def push_pairs(j: int):
        for i in range(j):
            lcm = tuple(max(a, b) for a, b in zip(leads[i], leads[j]))
            sugar = max(sugars[i] + sum(lcm) - sum(leads[i]),
                        sugars[j] + sum(lcm) - sum(leads[j]))
            pending.add((i, j))
            heapq.heappush(heap, (sugar, i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        sugar, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lt_i, lt_j = leads[i], leads[j]
        lcm = tuple(max(a, b) for a, b in zip(lt_i, lt_j))
        # product criterion: coprime leading terms reduce to zero
        if lcm == tuple(a + b for a, b in zip(lt_i, lt_j)):
            continue
        # chain criterion: both companion pairs already handled
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(leads[k], lcm):
                continue
            a1 = (min(i, k), max(i, k))
            a2 = (min(j, k), max(j, k))
            if a1 not in pending and a2 not in pending:
                skip = True
                break
        if skip:
            continue
        s = _s_poly(lt_i, basis[i], lt_j, basis[j], p)
        reducers = list(zip(leads, basis))
        r = _normal_form_raw(s, reducers, key, p)
        if not r:
            continue
        lt = max(r, key=key)
        basis.append(_monic(r, lt, p))
        leads.append(lt)
        sugars.append(sugar)
        push_pairs(len(basis) - 1)

    # minimalize: drop elements whose leading term another one divides
    keep: list[int] = []
    for i, lt in enumerate(leads):
        dominated = False
        for j, lt2 in enumerate(leads):
            if i == j:
                continue
            if _divides(lt2, lt) and (lt2 != lt or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)

    # tail-reduce every survivor against the others
    reduced: list[dict] = []
    for idx, i in enumerate(keep):
        others = [(leads[j], basis[j]) for j in keep if j != i]
        r = _normal_form_raw(basis[i], others, key, p)
        reduced.append(_monic(r, max(r, key=key), p))
    reduced.sort(key=lambda g: key(max(g, key=key)))
    return reduced


# -- ideal handles ------------------------------------------------------------

class IdealHandle:
    """Generator list plus a lazily cached reduced Groebner basis.

    The cache is written by a single assignment after the basis is fully
    built, so concurrent readers observe either no basis or the complete
    one; recomputation is harmless because the result is deterministic.
    """

    def __init__(self, ring: PolynomialRing,
                 generators: Iterable[Polynomial],
                 order: MonomialOrder | None = None):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise ContextError("generator from a different ring")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.order = order or ring.order
        self._basis: tuple[Polynomial, ...] | None = None
        self._reducers: list[tuple[tuple[int, ...], dict]] | None = None

    @classmethod
    def from_strings(cls, ring: PolynomialRing, texts: Iterable[str],
                     order: MonomialOrder | None = None) -> "IdealHandle":
        return cls(ring, [ring.from_string(t) for t in texts], order)

    @property
    def basis(self) -> tuple[Polynomial, ...]:
        if self._basis is None:
            raw = _buchberger([dict(g._terms) for g in self.generators],
                              self.order.key, self.ring.characteristic)
            reducers = [(max(g, key=self.order.key), g) for g in raw]
            self._reducers = reducers
            self._basis = tuple(Polynomial._from_raw(self.ring, dict(g))
                                for g in raw)
        return self._basis

    def _basis_reducers(self) -> list[tuple[tuple[int, ...], dict]]:
        self.basis
        return self._reducers

    def leading_exponents(self) -> list[tuple[int, ...]]:
        return [lt for lt, _ in self._basis_reducers()]

    def extended(self, *extra: Polynomial) -> "IdealHandle":
        return IdealHandle(self.ring, self.generators + tuple(extra), self.order)

    def __contains__(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return all(g in other for g in self.generators) and \
            all(g in self for g in other.generators)

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.generators)
        return f"IdealHandle([{inner}])"


def groebner_basis(ideal: IdealHandle) -> IdealHandle:
    """Ensure the reduced basis is computed and cached; idempotent."""
    ideal.basis
    return ideal


def normal_form(f: Polynomial, ideal: IdealHandle) -> Polynomial:
    """Remainder of f supported on standard monomials; zero iff f lies in the ideal."""
    if f.ring != ideal.ring:
        raise ContextError("polynomial from a different ring")
    raw = _normal_form_raw(dict(f._terms), ideal._basis_reducers(),
                           ideal.order.key, ideal.ring.characteristic)
    return Polynomial._from_raw(ideal.ring, raw)


# -- staircase counting -------------------------------------------------------

def _minimalize(exps: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for e in sorted(set(exps), key=lambda t: (sum(t), t)):
        if not any(_divides(m, e) for m in out):
            out.append(e)
    return out


def _count_1d(exps: list[tuple[int, ...]]) -> LengthValue:
    return min((e[0] for e in exps), default=INFINITE)


def _count_2d(exps: list[tuple[int, ...]]) -> LengthValue:
    gens = _minimalize(exps)
    if not any(e[1] == 0 for e in gens) or not any(e[0] == 0 for e in gens):
        return INFINITE
    gens.sort()
    # minimal staircase: x-exponents ascending, y-exponents strictly descending
    total = 0
    for (a0, b0), (a1, _) in zip(gens, gens[1:]):
        total += (a1 - a0) * b0
    return total


def _staircase_count(exps: list[tuple[int, ...]], nvars: int) -> LengthValue:
    if any(all(x == 0 for x in e) for e in exps):
        return 0
    if nvars == 1:
        return _count_1d(exps)
    if nvars == 2:
        return _count_2d(exps)
    pures = [e[-1] for e in exps if all(x == 0 for x in e[:-1])]
    if not pures:
        return INFINITE
    top = min(pures)
    thresholds = sorted({e[-1] for e in exps if e[-1] < top} | {0})
    total = 0
    for idx, lo in enumerate(thresholds):
        hi = thresholds[idx + 1] if idx + 1 < len(thresholds) else top
        active = [e[:-1] for e in exps if e[-1] <= lo]
        slab = _staircase_count(_minimalize(active), nvars - 1)
        if slab is INFINITE:
            return INFINITE
        total += slab * (hi - lo)
    return total


def _staircase_points(exps: list[tuple[int, ...]], nvars: int) -> list[tuple[int, ...]]:
    if any(all(x == 0 for x in e) for e in exps):
        return []
    if nvars == 1:
        top = _count_1d(exps)
        if top is INFINITE:
            raise ValueError("staircase is not finite")
        return [(i,) for i in range(top)]
    pures = [e[-1] for e in exps if all(x == 0 for x in e[:-1])]
    if not pures:
        raise ValueError("staircase is not finite")
    pts: list[tuple[int, ...]] = []
    for c in range(min(pures)):
        active = _minimalize([e[:-1] for e in exps if e[-1] <= c])
        pts.extend(sub + (c,) for sub in _staircase_points(active, nvars - 1))
    return pts


def colength(ideal: IdealHandle) -> LengthValue:
    """Number of standard monomials (k-dimension of the quotient), or INFINITE."""
    return _staircase_count(ideal.leading_exponents(), ideal.ring.nvars)


def standard_monomials(ideal: IdealHandle) -> list[Monomial]:
    """Monomial k-basis of an Artinian quotient, ascending in the active order."""
    pts = _staircase_points(ideal.leading_exponents(), ideal.ring.nvars)
    pts.sort(key=ideal.order.key)
    return [Monomial(e) for e in pts]


# -- colon ideals and socles --------------------------------------------------

def _exact_divide(h: Polynomial, g: Polynomial, key) -> Polynomial:
    p = h.ring.characteristic
    lt_g = max(g._terms, key=key)
    inv = pow(g._terms[lt_g], -1, p)
    work = dict(h._terms)
    quotient: dict[tuple[int, ...], int] = {}
    while work:
        lead = max(work, key=key)
        if not _divides(lt_g, lead):
            raise ArithmeticError("division is not exact")
        shift = tuple(a - b for a, b in zip(lead, lt_g))
        c = (work[lead] * inv) % p
        quotient[shift] = c
        _axpy(work, -c, shift, g._terms, p)
    return Polynomial._from_raw(h.ring, quotient)


def colon_ideal(ideal: IdealHandle, g: Polynomial) -> IdealHandle:
    """(I : g) = {h : h*g in I}, via the one-variable elimination trick.

    I intersect (g) is cut out by eliminating t from (t*I, (1-t)*g); the
    survivors divided by g generate the colon ideal.
    """
    if g.ring != ideal.ring:
        raise ContextError("polynomial from a different ring")
    if g.is_zero():
        raise ValueError("colon by the zero polynomial")
    ring = ideal.ring
    aux = "t_"
    while aux in ring.variables:
        aux += "_"
    aux_ring = PolynomialRing(ring.characteristic, (aux,) + ring.variables,
                              MonomialOrder(LEX))
    t = aux_ring.gen(aux)
    lifted = [t * gi.map_to(aux_ring) for gi in ideal.generators]
    lifted.append((aux_ring.one() - t) * g.map_to(aux_ring))
    eliminated = IdealHandle(aux_ring, lifted)
    survivors = [b.map_to(ring) for b in eliminated.basis
                 if all(e[0] == 0 for e in b._terms)]
    key = ideal.order.key
    quotients = [_exact_divide(h, g, key) for h in survivors]
    return IdealHandle(ring, quotients, ideal.order)


def socle_basis(ideal: IdealHandle, maximal: IdealHandle) -> list[Polynomial]:
    """Standard-monomial representatives of a k-basis of (I : m)/I.

    Computed as the joint kernel of the variable multiplication maps on
    the Artinian quotient; returned largest leading monomial first, in
    reduced echelon form, so the first element is canonical.
    """
    ring = ideal.ring
    if maximal.ring != ring:
        raise ContextError("maximal ideal from a different ring")
    if set(maximal.generators) != set(ring.gens()):
        raise ValueError("expected the ideal generated by all the variables")
    stds = standard_monomials(ideal)  # raises if not zero-dimensional
    if not stds:
        return []
    p = ring.characteristic
    desc = list(reversed(stds))
    index = {m.exponents: i for i, m in enumerate(desc)}
    reducers = ideal._basis_reducers()
    key = ideal.order.key
    rows = []
    for v in range(ring.nvars):
        block = np.zeros((len(desc), len(desc)), dtype=np.int64)
        for j, mono in enumerate(desc):
            shifted = list(mono.exponents)
            shifted[v] += 1
            image = _normal_form_raw({tuple(shifted): 1}, reducers, key, p)
            for e, c in image.items():
                block[index[e], j] = c
        rows.append(block)
    stacked = np.vstack(rows)
    kernel = linalg.nullspace(stacked, p)
    out = []
    for vec in kernel:
        terms = {desc[i].exponents: int(c) for i, c in enumerate(vec) if c}
        out.append(Polynomial._from_raw(ring, terms))
    return out
