#!/usr/bin/env python3
"""Walk through the degree-3 Veronese decomposition at p = 5.

The p-th root of each module splits into copies of the module classes;
the multiplicities are lattice-point counts of residue classes, arranged
in a circulant matrix whose normalized powers converge to 1/n.
"""


from frobkit import (VeroneseSpec, bounds_check, decomposition_matrix,
                     group_order_check, mk_count, power_limit)

spec = VeroneseSpec(n=3, p=5)
print("class counts m_k = #{(a,b) in [0,5)^2 : a+b = k mod 3}:")
for k in range(3):
    print(f"  m_{k} = {mk_count(5, 3, k)}")

matrix = decomposition_matrix(spec)
print("\ndecomposition matrix (row = module, column = summand class):")
for row in matrix.rows:
    print("  ", list(row))

report = bounds_check(matrix)
print(f"\nrow sums p^2 and unit steps verified: {report.passed} "
      f"(floor {report.floor}, remainder {report.remainder})")

print("\nnormalized top-left entries of matrix powers:")
for s, value in enumerate(power_limit(matrix, 6), start=1):
    print(f"  s={s}:  {value}  ~ {float(value):.6f}")
print("limit 1/3: the signature of the cubic Veronese")

order = group_order_check(spec, power_limit(matrix, 6)[-1])
print(f"\nreciprocal {float(order.computed):.4f} recovers the group order "
      f"{order.expected_order}: {order.passed}")

print("\nthe same machinery at n = 1 degenerates to the regular case:")
print("  ", power_limit(decomposition_matrix(VeroneseSpec(n=1, p=2)), 3))
