#!/usr/bin/env python3
"""Hilbert-Kunz sampling on a regular plane and on the quadric cone.

Bracket powers raise generators to q-th powers (a homomorphism in
characteristic p), colengths count staircase lattice points under the
Groebner staircase, and a two-point secant isolates the multiplicity.
"""

from frobkit import (RingPresentation, hk_estimate, hk_function,
                     quotient_colength)

regular = RingPresentation.regular(2, ("x", "y"))
samples = hk_function(regular, regular.maximal_ideal(), e_max=4)
print("regular F_2[x,y], maximal ideal: lengths are exactly q^2")
for s in samples:
    print(f"  q={s.q:>3}  length={s.length}")
estimate = hk_estimate(samples, regular.dimension)
print(f"secant multiplicity: {estimate.hk_multiplicity} "
      f"(residual {estimate.residual})\n")

cone = RingPresentation.hypersurface(3, ("x", "y", "z"), "x*y + z^2")
samples = hk_function(cone, cone.maximal_ideal(), e_max=3)
print("quadric cone over F_3, maximal ideal:")
for s in samples:
    print(f"  q={s.q:>3}  length={s.length}   length/q^2 = {s.length / s.q**2:.4f}")
estimate = hk_estimate(samples, cone.dimension)
print(f"secant multiplicity: {estimate.hk_multiplicity} "
      f"~ {float(estimate.hk_multiplicity):.4f}  (3/2 is the true value; "
      f"2 - 3/2 = 1/2 recovers the signature)")

print("\nmonomial ideals dilate exactly under bracket powers:")
ideal = cone.ideal("x^3", "y^3", "z^3")
print(f"  length of the cone modulo (x^3, y^3, z^3): "
      f"{quotient_colength(cone, ideal)}")
