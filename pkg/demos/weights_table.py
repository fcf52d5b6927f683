"""
Exact weights of the n-point rules
==================================

Every rule here is the left rectangle value a_1 f(x_1) plus a correction
written with divided differences.  The weights are exact rationals, so the
whole table can be built without a single rounding error.
"""

from ncquad import compute_weights, nodal_weights

# Weight a_j multiplies h^j; the last column is the degree of exactness.
for n in range(2, 10):
    ws = compute_weights(n)
    row = "  ".join(str(r) for r in ws.ratios())
    print(f"n={n}  deg={ws.degree}  {row}")

# Expanding the divided differences gives back the classical closed
# Newton-Cotes weights: Simpson's 1/3, 4/3, 1/3 for three points.
print("Simpson nodal weights:", [str(c) for c in nodal_weights(3)])

# The coefficient in front of the error estimate.  For odd n it carries h^n,
# for even n h^(n-1).
for n in (2, 3, 5, 7, 9):
    coeff, power = compute_weights(n).error_coeff
    print(f"n={n}: {coeff} h^{power}")

# Weights are plain data and round-trip through JSON.
print(compute_weights(4).to_json())
