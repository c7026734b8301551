"""frobkit: exact characteristic-p commutative algebra at desk scale.

Sparse polynomial arithmetic over prime fields, a Buchberger engine with
staircase colength counting, Frobenius bracket powers with Hilbert-Kunz
sampling, F-signature estimation on double-point hypersurfaces, Veronese
Frobenius-decomposition combinatorics, and truncated first-Ext reports
for matrix factorizations of curve singularities.
"""

from .algebra import (GREVLEX, LEX, ContextError, FpScalar, Monomial,
                      MonomialOrder, ParseError, Polynomial, PolynomialRing,
                      is_prime, parse_poly, poly_arith, poly_power,
                      render_poly)
from .extcheck import (UNSTABLE, ExtReport, MatrixFactorization,
                       WitnessReport, annihilator_exponent, ext1_length,
                       mf_validate, multiplication_lands_in,
                       theorem_main_witness)
from .frobenius import (FrobeniusPower, HKEstimate, HKSample,
                        MultiplicityRecord, RingPresentation,
                        SearchFailureError, UnsupportedRingError,
                        ade_classify, bracket_power, cm_type,
                        find_minimal_reduction, hk_estimate, hk_function,
                        multiplicity, quotient_colength)
from .fsignature import (AdeSpec, FreeRankSample, FSignatureEstimate,
                         InequalityReport, ade_expected,
                         check_lower_inequality, check_upper_bound,
                         free_rank_sample, fsignature_estimate,
                         regularity_check)
from .groebner import (INFINITE, IdealHandle, colength, colon_ideal,
                       groebner_basis, normal_form, socle_basis,
                       standard_monomials)
from .veronese import (BoundsReport, DecompositionMatrix, GroupOrderReport,
                       VeroneseSpec, bounds_check, decomposition_matrix,
                       group_order_check, mk_count, power_limit)

__version__ = "0.1.0"
