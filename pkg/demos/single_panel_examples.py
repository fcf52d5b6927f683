"""
One panel, three integrands
===========================

The rule returns four numbers: the left rectangle value Q, the correction
E_tilde, their sum S (the closed Newton-Cotes value) and an estimate E_bar of
the error I - S built from one or two extra midpoint samples.
"""

from fractions import Fraction

import gmpy2
import mpmath

from ncquad import apply_rule, is_realistic

# sqrt(x) on [0, h] with two points.  f' blows up at 0, yet the estimate
# still has the right sign and leading digit.
for h in ("0.1", "0.05", "0.025"):
    out = apply_rule(gmpy2.sqrt, 0, h, 2, precision=30)
    true = mpmath.mpf(2) / 3 * mpmath.mpf(h) ** 1.5 - mpmath.mpf(str(out.S))
    print(f"sqrt  h={h:<6} E_bar={float(out.E_bar):.6g}  E={float(true):.6g}  "
          f"realistic={is_realistic(out.E_bar, str(true))}")

# exp(-x^2) with Simpson's three points on [0, 2h].
for k in (2, 4, 8, 16):
    h = Fraction(1, k)
    out = apply_rule(lambda t: gmpy2.exp(-t * t), 0, h, 3, precision=30)
    true = mpmath.sqrt(mpmath.pi) / 2 * mpmath.erf(mpmath.mpf(2) / k) - mpmath.mpf(str(out.S))
    print(f"gauss h=1/{k:<3} E_bar={float(out.E_bar):.6g}  E={float(true):.6g}")

# sin(2x) with five points.  The four correction terms are available
# individually.
out = apply_rule(lambda t: gmpy2.sin(2 * t), 0, Fraction(1, 8), 5, precision=20)
print("correction terms:", [float(t) for t in out.correction_terms])
print("S =", out.S, " E_bar =", out.E_bar)
