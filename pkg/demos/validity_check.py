"""
When can the estimate be trusted?
=================================

The estimate is backed by a condition on g(x, h), a function built from the
Taylor coefficients of f.  It needs f' != 0 and g >= h on the open interval.
g only needs derivatives up to order n-1, which come from Taylor-jet
arithmetic on the parsed expression.
"""

import io
from fractions import Fraction

import gmpy2

from ncquad import check_condition, g_function, parse

gauss = parse("exp(-x^2)")

# For three points g(x, h) = |1 + (h/6) f''/f'|.
print("g(1/2, 1/2) =", g_function(gauss, Fraction(1, 2), Fraction(1, 2), 3))

# Sample g on (0, 2h) for the panels used with exp(-x^2).
for k in (2, 4, 8, 16):
    h = Fraction(1, k)
    rep = check_condition(gauss, 0, 2 * h, 3, h)
    print(f"h=1/{k:<2} min g={float(rep.min_g):.4f}  holds={rep.condition_holds}")

# A sign change of f' is reported, not hidden.
rep = check_condition(parse("sin(x)"), 0, 2 * gmpy2.const_pi(), 3, Fraction(1, 8), grid_points=100)
print("sin on (0, 2pi): f' zero suspected =", rep.fprime_zero_suspected)

# The samples go out as CSV for plotting elsewhere.
buf = io.StringIO()
check_condition(parse("sin(2*x)"), 0, 0.6, 5, Fraction(1, 8), grid_points=5).to_csv(buf)
print(buf.getvalue())
