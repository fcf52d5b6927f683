"""The simple n-point rule: left rectangle, its correction, and the error estimate.

For a panel x_1 < ... < x_n with step h::

    Q = a_1 f(x_1)
    E_tilde = sum_{k=2..n} a_k f[x_1..x_k]
    S = Q + E_tilde

S is algebraically the closed Newton-Cotes rule on the panel.  The
a-posteriori estimate of I - S uses one (n even) or two (n odd) extra
midpoints and the next divided difference::

    E_bar = c h^p * f[x_1..x_n, midpoints] / f[x_1, x_2] * E_tilde

At a finite precision the arithmetic carries guard bits and every output is
rounded once, so S is the rule applied to the sampled values to within half
an ulp.  The rounded S can differ from the rounded Q + E_tilde in the last
place.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable

import gmpy2

from .divdiff import ExtendedPanel, Panel, _leading_entries, divided_difference, extend
from .exact_poly import WeightSet, compute_weights
from .precision import DEFAULT_DIGITS, decimal_str, guarded, is_real, real, rounded, working

__all__ = [
    "EstimateUnavailable",
    "RuleOutput",
    "simple_rule",
    "realistic_error",
    "apply_rule",
    "theoretical_error_Qn",
    "is_realistic",
]


class EstimateUnavailable(ArithmeticError):
    """f[x_1, x_2] vanishes on the panel, so the error estimate is meaningless."""


@dataclass(frozen=True)
class RuleOutput:
    Q: object
    correction_terms: tuple
    E_tilde: object
    S: object
    E_bar: object = None
    degree: int = 0


def _scale(r: Fraction, hp):
    if isinstance(hp, Fraction) or isinstance(hp, int):
        return r * hp
    return real(r) * hp


def _simple(panel: Panel, weights: WeightSet) -> RuleOutput:
    if panel.precision is None:
        return _simple_at(panel, weights)
    # Cancellation in the high differences costs a few dozen ulps at the
    # working precision, so the rule runs with guard bits and rounds once.
    p = panel.precision
    with guarded(p):
        out = _simple_at(panel, weights)
    return RuleOutput(
        Q=rounded(out.Q, p),
        correction_terms=tuple(rounded(t, p) for t in out.correction_terms),
        E_tilde=rounded(out.E_tilde, p),
        S=rounded(out.S, p),
        degree=out.degree,
    )


def _simple_at(panel: Panel, weights: WeightSet) -> RuleOutput:
    n = panel.n
    table = _leading_entries(panel.x, panel.y)
    h = panel.h
    hp = h
    Q = _scale(weights.weights[0][0], hp) * table[0]
    terms = []
    for j in range(1, n):
        hp = hp * h
        terms.append(_scale(weights.weights[j][0], hp) * table[j])
    E = terms[0]
    for t in terms[1:]:
        E = E + t
    return RuleOutput(Q=Q, correction_terms=tuple(terms), E_tilde=E, S=Q + E, degree=weights.degree)


def simple_rule(panel: Panel, weights: WeightSet | None = None) -> RuleOutput:
    """Q, the correction terms, their sum and S for one panel (E_bar left unset)."""
    if weights is None:
        weights = compute_weights(panel.n)
    if panel.n != weights.n:
        raise ValueError(f"panel has {panel.n} nodes but weights are for n={weights.n}")
    if panel.precision is None:
        return _simple(panel, weights)
    with working(panel.precision):
        return _simple(panel, weights)


def _estimate(panel: Panel, ext: ExtendedPanel, weights: WeightSet, E_tilde):
    x, y = panel.x, panel.y
    if E_tilde == 0:
        # Ē is proportional to Ẽ; no ratio needed when the correction is zero.
        return Fraction(0) if panel.precision is None else real(0)
    d1 = (y[1] - y[0]) / (x[1] - x[0])
    if panel.precision is None:
        vanishing = d1 == 0
    else:
        scale = max(abs(v) for v in y)
        vanishing = abs(d1) <= scale * real(10) ** (2 - panel.precision) or d1 == 0
    if vanishing:
        raise EstimateUnavailable(
            "first-derivative proxy vanishes; estimate unreliable "
            f"(f[x1,x2] = {d1} on panel starting at {x[0]})"
        )
    order = panel.n + 1 if panel.n % 2 else panel.n
    r, p = weights.error_coeff
    if panel.precision is None:
        high = divided_difference(ext.nodes, ext.values, order)
        return _scale(r, panel.h**p) * high / d1 * E_tilde
    with guarded(panel.precision):
        high = divided_difference(ext.nodes, ext.values, order)
        est = _scale(r, panel.h**p) * high / d1 * E_tilde
    return rounded(est, panel.precision)


def realistic_error(panel: Panel, extended: ExtendedPanel, weights: WeightSet | None, E_tilde):
    """Estimate of I - S on one panel.

    Raises EstimateUnavailable when f[x_1, x_2] is zero to working precision.
    """
    if weights is None:
        weights = compute_weights(panel.n)
    if extended.base is not panel and extended.base != panel:
        raise ValueError("extended panel does not belong to this panel")
    if panel.precision is None:
        return _estimate(panel, extended, weights, E_tilde)
    with working(panel.precision):
        return _estimate(panel, extended, weights, E_tilde)


def apply_rule(f: Callable, start, h, n: int, precision: int | None = DEFAULT_DIGITS) -> RuleOutput:
    """Sample ``f`` on the panel start, start+h, ..., and return the full output."""
    weights = compute_weights(n)
    panel = Panel.sample(f, start, h, n, precision)
    out = simple_rule(panel, weights)
    ext = extend(panel, f)
    return replace(out, E_bar=realistic_error(panel, ext, weights, out.E_tilde))


def theoretical_error_Qn(panel: Panel, fprime_bound):
    """(n-1)^2 h^2 / 2 * fprime_bound, the error of the left rectangle rule."""
    i_w1 = compute_weights(panel.n).weights[1][0]
    if panel.precision is None:
        return i_w1 * panel.h**2 * fprime_bound
    with working(panel.precision):
        return real(i_w1) * panel.h**2 * real(fprime_bound)


def _to_decimal(x) -> Decimal:
    if isinstance(x, Decimal):
        return x
    if isinstance(x, Fraction):
        with localcontext() as ctx:
            ctx.prec = 40
            return Decimal(x.numerator) / Decimal(x.denominator)
    if is_real(x):
        if not gmpy2.is_finite(x):
            return Decimal(str(x))
        return Decimal(decimal_str(x))
    if isinstance(x, (int, float)):
        return Decimal(repr(x))
    if isinstance(x, str):
        return Decimal(x)
    return Decimal(str(x))


def _leading(d: Decimal) -> tuple[int, int]:
    """(exponent k, first digit) with |d| = 0.d1d2... * 10**k."""
    t = d.normalize().as_tuple()
    return d.adjusted() + 1, t.digits[0]


def is_realistic(E_bar, E_true) -> bool:
    """Same sign and a leading mantissa digit within one unit.

    Both numbers are written as +-0.d1d2... x 10^k.  Adjacent exponents are
    accepted only in the 0.9x10^k vs 0.1x10^(k+1) case.
    """
    a, b = _to_decimal(E_bar), _to_decimal(E_true)
    if not (a.is_finite() and b.is_finite()):
        raise ValueError("is_realistic needs finite numbers")
    if b == 0 or a == 0:
        return a == b
    if (a < 0) != (b < 0):
        return False
    ka, da = _leading(a)
    kb, db = _leading(b)
    if ka == kb:
        return abs(da - db) <= 1
    if abs(ka - kb) == 1:
        lo, hi = (da, db) if ka < kb else (db, da)
        return lo == 9 and hi == 1
    return False
