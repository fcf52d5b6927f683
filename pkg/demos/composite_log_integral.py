"""
Composite rules for the logarithmic integral
============================================

1/ln(x) on [1e5, 2e5] is smooth and slowly varying, so high-order composite
rules reach errors around 1e-42.  The arithmetic has to keep up: the runs
below use 60 significant digits.  The whole table takes some seconds.
"""

from fractions import Fraction

import gmpy2
import mpmath

from ncquad import is_realistic, sweep_cases

mpmath.mp.dps = 80
reference = mpmath.nstr(mpmath.li(200000) - mpmath.li(100000), 75)

cases = [(3, Fraction(5)), (3, Fraction(5, 3)), (5, Fraction(5, 2)), (5, Fraction(5, 6)),
         (7, Fraction(5, 3)), (7, Fraction(5, 6)), (9, Fraction(25, 6)), (9, Fraction(5, 2))]

# Consecutive panels share their end nodes; each panel adds one or two
# midpoint evaluations for the estimate.
rows = sweep_cases(100000, 200000, cases, lambda t: 1 / gmpy2.log(t), 60, reference)
for r in rows:
    print(f"n={r.n} h={str(r.h):>4}  E_bar={float(r.E_bar): .5e}  I-S={float(r.E_true): .5e}  "
          f"{'realistic' if is_realistic(r.E_bar, r.E_true) else 'not realistic'}")

# The seven-point rule with h = 5/3 gets the integral to about 36 digits.
print("S7 =", rows[4].S)
print("I  =", reference[:45])
