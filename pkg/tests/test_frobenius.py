from __future__ import annotations

import random

import pytest

from frobkit import (INFINITE, FrobeniusPower, IdealHandle,
                     MatrixFactorization, PolynomialRing, RingPresentation,
                     SearchFailureError, UnsupportedRingError, ade_classify,
                     bracket_power, cm_type, colength, find_minimal_reduction,
                     hk_estimate, hk_function, mf_validate, multiplicity,
                     multiplication_lands_in, quotient_colength, socle_basis)
from frobkit.frobenius import HKSample

from conftest import random_monomial_ideal
from oracles import dense_colength_stable


# -- presentations -------------------------------------------------------------

def test_presentation_validation():
    with pytest.raises(ValueError):
        RingPresentation.from_dict({"char": 4, "vars": ["x"], "relations": []})
    with pytest.raises(ValueError):
        RingPresentation.from_dict(
            {"char": 5, "vars": ["x"], "relations": ["x"]})  # dimension 0
    with pytest.raises(ValueError):
        RingPresentation.hypersurface(5, ("x", "y"), "x + 1")  # unit term
    with pytest.raises(ValueError):
        RingPresentation.from_dict(
            {"char": 5, "vars": ["x", "y"], "relations": [], "dim": 1})
    good = RingPresentation.from_dict(
        {"char": 7, "vars": ["x", "y", "z"],
         "relations": ["x^2 + y^3 + z^5"], "dim": 2})
    assert good.dimension == 2 and not good.is_regular
    assert good.to_dict()["char"] == 7


# -- bracket powers ------------------------------------------------------------

def test_bracket_examples():
    ring2 = PolynomialRing(2, ("x", "y"))
    I = IdealHandle(ring2, ring2.gens())
    assert {str(g) for g in bracket_power(I, 4).generators} == {"x^4", "y^4"}
    assert {str(g) for g in bracket_power(I, 1).generators} == {"x", "y"}
    ring3 = PolynomialRing(3, ("x", "y"))
    J = IdealHandle.from_strings(ring3, ["x + y"])
    assert [str(g) for g in bracket_power(J, 3).generators] == ["x^3 + y^3"]
    with pytest.raises(ValueError):
        bracket_power(I, 6)
    with pytest.raises(ValueError):
        FrobeniusPower.from_q(12, 2)
    assert FrobeniusPower(3, 2).q == 9


def test_bracket_composition_property():
    rng = random.Random(5)
    ring = PolynomialRing(3, ("x", "y", "z"))
    for _ in range(6):
        I = random_monomial_ideal(ring, rng, max_exp=4)
        I = I.extended(ring.from_string("x + 2*y"))
        once = bracket_power(bracket_power(I, 3), 9)
        at_once = bracket_power(I, 27)
        assert [str(g) for g in once.generators] == \
            [str(g) for g in at_once.generators]


def test_bracket_matches_generic_power():
    ring = PolynomialRing(5, ("x", "y"))
    f = ring.from_string("x^2 + 3*x*y + y")
    assert f.frobenius_power(25) == f ** 25


# -- quotient colengths ----------------------------------------------------------

def test_quotient_colength_examples():
    regular = RingPresentation.regular(5, ("x", "y"))
    assert quotient_colength(regular, regular.ideal("x^5", "y^5")) == 25
    cone = RingPresentation.hypersurface(3, ("x", "y", "z"), "x*y + z^2")
    assert quotient_colength(cone, cone.maximal_ideal()) == 1
    boxed = cone.ideal("x^3", "y^3", "z^3")
    assert quotient_colength(cone, boxed) == 13
    # dense row-reduction oracle on the combined generators
    combined = list(boxed.generators) + list(cone.relations)
    assert dense_colength_stable(combined, 7) == 13
    assert quotient_colength(cone, cone.ideal("x")) is INFINITE


def test_hk_function_regular():
    regular = RingPresentation.regular(2, ("x", "y"))
    samples = hk_function(regular, regular.maximal_ideal(), 3)
    assert [(s.q, s.length) for s in samples] == [(2, 4), (4, 16), (8, 64)]


def test_hk_function_monomial_dilation():
    ring = RingPresentation.regular(3, ("x", "y"))
    I = ring.ideal("x^2", "x*y", "y^2")
    base = quotient_colength(ring, I)
    assert base == 3
    for s in hk_function(ring, I, 3):
        assert s.length == base * s.q ** 2


def test_hk_function_double_point_freeness():
    # rank-two freeness over the parameter plane forces length 2q^2
    pres = RingPresentation.hypersurface(5, ("x", "y", "z"),
                                         "x^2 + y^3 + z^4")
    samples = hk_function(pres, pres.ideal("y", "z"), 2)
    assert [(s.q, s.length) for s in samples] == [(5, 50), (25, 1250)]


def test_hk_function_rejects_non_primary():
    regular = RingPresentation.regular(5, ("x", "y"))
    with pytest.raises(ValueError):
        hk_function(regular, regular.ideal("x"), 2)
    with pytest.raises(ValueError):
        hk_function(regular, regular.ideal("1"), 2)


def test_hk_estimate_examples():
    est = hk_estimate([HKSample(2, 4), HKSample(4, 16)], 2)
    assert est.hk_multiplicity == 1 and est.lower_coefficient == 0
    assert est.residual == 0
    # staircase scaling: length(q) = 3 q^2 exactly
    est3 = hk_estimate([HKSample(3, 27), HKSample(9, 243)], 2)
    assert est3.hk_multiplicity == 3
    pres = RingPresentation.hypersurface(3, ("x", "y", "z"), "x*y + z^2")
    samples = hk_function(pres, pres.maximal_ideal(), 3)
    est_a1 = hk_estimate(samples, 2)
    assert abs(est_a1.hk_multiplicity - (3, 2)[0] / (3, 2)[1]) <= 0.05
    with pytest.raises(ValueError):
        hk_estimate([HKSample(2, 4)], 2)


# -- multiplicity and reductions ---------------------------------------------------

def test_multiplicity_examples():
    e8 = RingPresentation.hypersurface(7, ("x", "y", "z"),
                                       "x^2 + y^3 + z^5")
    assert multiplicity(e8).e == 2
    assert multiplicity(e8).method == "order-of-relation"
    regular = RingPresentation.regular(5, ("x", "y"))
    assert multiplicity(regular).e == 1
    cubic = RingPresentation.hypersurface(7, ("x", "y"), "x^3 + y^3")
    assert multiplicity(cubic).e == 3
    two_rel = RingPresentation(
        PolynomialRing(5, ("x", "y", "z")),
        [PolynomialRing(5, ("x", "y", "z")).from_string("x^2"),
         PolynomialRing(5, ("x", "y", "z")).from_string("y^2")])
    with pytest.raises(UnsupportedRingError):
        multiplicity(two_rel)


def test_multiplicity_parameter_cross_check():
    e8 = RingPresentation.hypersurface(7, ("x", "y", "z"),
                                       "x^2 + y^3 + z^5")
    J = find_minimal_reduction(e8)
    record = multiplicity(e8, parameter_ideal=J, q=7)
    assert record.e == 2 and record.method == "parameter-colength-limit"
    bad = e8.ideal("y", "z^2")  # colength 4, not a minimal reduction
    with pytest.raises(ValueError):
        multiplicity(e8, parameter_ideal=bad, q=7)


def test_ade_classification():
    cases = [("x*y + z^2", ("A", 1)), ("x*y + z^6", ("A", 5)),
             ("x^2 + y*z^2 + y^3", ("D", 4)),
             ("x^2 + y*z^2 + y^5", ("D", 6)),
             ("x^2 + y^3 + z^4", ("E6", 6)),
             ("x^2 + y^3 + y*z^3", ("E7", 7)),
             ("x^2 + y^3 + z^5", ("E8", 8))]
    for text, expected in cases:
        pres = RingPresentation.hypersurface(7, ("x", "y", "z"), text)
        assert ade_classify(pres) == expected
    other = RingPresentation.hypersurface(7, ("x", "y", "z"),
                                          "x^2 + y^5 + z^5")
    assert ade_classify(other) is None
    assert ade_classify(RingPresentation.regular(7, ("x", "y"))) is None


def test_find_minimal_reduction_examples():
    e6 = RingPresentation.hypersurface(5, ("x", "y", "z"),
                                       "x^2 + y^3 + z^4")
    J = find_minimal_reduction(e6)
    assert {str(g) for g in J.generators} == {"y", "z"}
    assert quotient_colength(e6, J) == 2

    a1 = RingPresentation.hypersurface(3, ("x", "y", "z"), "x*y + z^2")
    J1 = find_minimal_reduction(a1)
    assert {str(g) for g in J1.generators} == {"x + 2*y", "z"}
    assert quotient_colength(a1, J1) == 2

    regular = RingPresentation.regular(2, ("x", "y"))
    J2 = find_minimal_reduction(regular)
    assert {str(g) for g in J2.generators} == {"x", "y"}
    assert quotient_colength(regular, J2) == 1


def test_find_minimal_reduction_unsupported_cases():
    a1_char2 = RingPresentation.hypersurface(2, ("x", "y", "z"),
                                             "x*y + z^2")
    with pytest.raises(UnsupportedRingError):
        find_minimal_reduction(a1_char2)
    a2_char3 = RingPresentation.hypersurface(3, ("x", "y", "z"),
                                             "x*y + z^3")
    with pytest.raises(UnsupportedRingError):
        find_minimal_reduction(a2_char3)  # p divides n + 1
    triple = RingPresentation.hypersurface(5, ("x", "y"), "x^3 + y^3")
    with pytest.raises(UnsupportedRingError):
        find_minimal_reduction(triple)


def test_find_minimal_reduction_search_failure_names_candidate():
    node = RingPresentation.hypersurface(5, ("x", "y"), "x*y")
    with pytest.raises(SearchFailureError) as err:
        find_minimal_reduction(node, trials=1, seed=2)
    assert "candidate" in str(err.value)
    # a healthier budget succeeds on the same curve
    J = find_minimal_reduction(node, trials=8, seed=2)
    assert quotient_colength(node, J) == 2


def test_cm_type_examples():
    regular = RingPresentation.regular(5, ("x", "y"))
    assert cm_type(regular, regular.maximal_ideal()) == 1
    assert cm_type(regular, regular.ideal("x^2", "y^2")) == 1  # socle = xy
    e7 = RingPresentation.hypersurface(5, ("x", "y", "z"),
                                       "x^2 + y^3 + y*z^3")
    assert cm_type(e7, find_minimal_reduction(e7)) == 1  # Gorenstein
    with pytest.raises(ValueError):
        cm_type(regular, regular.ideal("x"))


def test_socle_element_kills_curve_cokernel():
    # nonfree maximal Cohen-Macaulay cokernel over the cusp: the socle
    # representative of R/(x) must multiply the module into x times it
    ring = PolynomialRing(7, ("x", "y"))
    f = ring.from_string("y^2 + 6*x^3")
    x, y = ring.gens()
    phi = ((y, x * x), (x, y))
    psi = ((y, -(x * x)), (-x, y))
    mf = MatrixFactorization(ring, f, phi, psi)
    assert mf_validate(mf)
    pres = RingPresentation(ring, [f])
    combined = IdealHandle(ring, (x,) + pres.relations)
    delta = socle_basis(combined, pres.maximal_ideal())[0]
    assert str(delta) == "y"
    hits = [multiplication_lands_in(mf, delta, [x], t) for t in (3, 4)]
    assert hits == [True, True]  # stable across caps
    # sanity: the identity does not land in x*M, the quotient is nonzero
    assert not multiplication_lands_in(mf, ring.one(), [x], 4)
