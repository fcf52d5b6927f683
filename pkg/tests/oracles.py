"""Reference computations that share no code with the package.

sympy does the polynomial algebra, mpmath the special functions.
"""

from fractions import Fraction

import mpmath
import sympy

t = sympy.Symbol("t")


def to_fraction(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def newton_poly_coeffs(j: int) -> list[Fraction]:
    """Coefficients (low to high) of t(t-1)...(t-j+1), expanded by sympy."""
    expr = sympy.Integer(1)
    for i in range(j):
        expr *= t - i
    poly = sympy.Poly(sympy.expand(expr), t)
    return [to_fraction(c) for c in reversed(poly.all_coeffs())]


def lagrange_nc_weights(n: int) -> list[Fraction]:
    """Closed Newton-Cotes weights on nodes 0..n-1 by integrating Lagrange polynomials."""
    out = []
    for j in range(n):
        ell = sympy.Integer(1)
        for m in range(n):
            if m != j:
                ell *= sympy.Rational(1, j - m) * (t - m)
        out.append(_poly_integral(ell, 0, n - 1))
    return out


def _poly_integral(expr, lo, hi) -> Fraction:
    P = sympy.Poly(sympy.expand(expr), t, domain="QQ").integrate()
    return to_fraction(P.eval(hi) - P.eval(lo))


def newton_form_weights(n: int) -> list[Fraction]:
    """a_i as plain sympy integrals of the Newton polynomials over [0, n-1]."""
    out = []
    for i in range(n):
        expr = sympy.Integer(1)
        for m in range(i):
            expr *= t - m
        out.append(_poly_integral(expr, 0, n - 1))
    return out


def log_integral(a, b, dps: int = 110) -> str:
    with mpmath.workdps(dps):
        return mpmath.nstr(mpmath.li(b) - mpmath.li(a), dps - 5)


def gaussian_integral(upper, dps: int = 60) -> str:
    """Integral of exp(-x^2) over [0, upper]."""
    with mpmath.workdps(dps):
        u = mpmath.mpf(upper.numerator) / upper.denominator if isinstance(upper, Fraction) else mpmath.mpf(upper)
        return mpmath.nstr(mpmath.sqrt(mpmath.pi) / 2 * mpmath.erf(u), dps - 5)


def sin2x_integral(upper, dps: int = 60) -> str:
    """Integral of sin(2x) over [0, upper] = sin(upper)^2."""
    with mpmath.workdps(dps):
        u = mpmath.mpf(upper.numerator) / upper.denominator if isinstance(upper, Fraction) else mpmath.mpf(upper)
        return mpmath.nstr(mpmath.sin(u) ** 2, dps - 5)


def sqrt_integral(upper, dps: int = 60) -> str:
    with mpmath.workdps(dps):
        u = mpmath.mpf(upper.numerator) / upper.denominator if isinstance(upper, Fraction) else mpmath.mpf(upper)
        return mpmath.nstr(mpmath.mpf(2) / 3 * u * mpmath.sqrt(u), dps - 5)


def sig_match(value, expected, digits: int) -> bool:
    """|value - expected| <= half a unit in the ``digits``-th significant place of expected."""
    with mpmath.workdps(80):
        v = mpmath.mpf(str(value)) if not isinstance(value, mpmath.mpf) else value
        e = mpmath.mpf(str(expected))
        if e == 0:
            return v == 0
        place = mpmath.floor(mpmath.log10(abs(e))) - digits + 1
        return abs(v - e) <= mpmath.mpf(10) ** place / 2


def _explicit_dd(x, y):
    """f[x_0..x_k] = sum_j y_j / prod_{m != j} (x_j - x_m)."""
    total = 0
    for j, xj in enumerate(x):
        denom = 1
        for m, xm in enumerate(x):
            if m != j:
                denom *= xj - xm
        total += y[j] / denom
    return total


def realistic_error_reference(f, a, h, n: int, dps: int = 60):
    """(S, E_bar) for one panel, straight from the defining formulas in mpmath.

    ``f`` maps an mpmath number to an mpmath number; ``a`` and ``h`` are
    Fractions.
    """
    c = lagrange_nc_weights(n)
    order = n + 1 if n % 2 else n
    ratio_poly = sympy.Integer(1)
    for m in range(order):
        ratio_poly *= t - m
    i_top = _poly_integral(ratio_poly, 0, n - 1)
    i_w1 = _poly_integral(t, 0, n - 1)
    with mpmath.workdps(dps):
        A = mpmath.mpf(a.numerator) / a.denominator
        H = mpmath.mpf(h.numerator) / h.denominator
        x = [A + k * H for k in range(n)]
        y = [f(v) for v in x]
        S = H * mpmath.fsum(mpmath.mpf(cj.numerator) / cj.denominator * yj for cj, yj in zip(c, y))
        Q = (n - 1) * H * y[0]
        mids = [A + H / 2] + ([A + (n - 1.5) * H] if n % 2 else [])
        ext_x = x + mids
        ext_y = y + [f(v) for v in mids]
        high = _explicit_dd(ext_x[: order + 1], ext_y[: order + 1])
        d1 = (y[1] - y[0]) / H
        coeff = mpmath.mpf(i_top.numerator) / i_top.denominator / (mpmath.mpf(i_w1.numerator) / i_w1.denominator)
        E_bar = coeff * H ** (order - 1) * high / d1 * (S - Q)
        return S, E_bar
