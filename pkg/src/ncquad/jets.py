"""Truncated Taylor series ("jets") for higher derivatives of parsed integrands.

A jet of order m at c holds c_k = f^(k)(c) / k! for k = 0..m.  Arithmetic on
jets is the usual truncated power-series arithmetic; unary functions use the
recurrences obtained from their first-order ODEs (b' = u(a) a').
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2

from .expr import BinOp, Call, DomainError, Neg, Num, Pi, Pow, Var
from .precision import DEFAULT_DIGITS, real, working

__all__ = ["TaylorJet", "jet_eval", "derivatives"]


@dataclass(frozen=True)
class TaylorJet:
    center: object
    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, k: int):
        return self.coeffs[k] * math.factorial(k)


def _const(v, m):
    return [v] + [v * 0] * m


def _mul(a, b):
    m = len(a) - 1
    return [sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(m + 1)]


def _div(a, b, pos):
    if b[0] == 0:
        raise DomainError("division by a jet with zero constant term", pos)
    m = len(a) - 1
    c = []
    for k in range(m + 1):
        s = a[k]
        for j in range(1, k + 1):
            s = s - b[j] * c[k - j]
        c.append(s / b[0])
    return c


def _integrate_rate(a, u, b0):
    """Coefficients of b with b' = u * a' and b(0) = b0."""
    m = len(a) - 1
    b = [b0]
    for k in range(1, m + 1):
        s = sum(j * a[j] * u[k - j] for j in range(1, k + 1))
        b.append(s / k)
    return b


def _exp(a):
    m = len(a) - 1
    b = [gmpy2.exp(a[0])]
    for k in range(1, m + 1):
        b.append(sum(j * a[j] * b[k - j] for j in range(1, k + 1)) / k)
    return b


def _ln(a, pos):
    if a[0] <= 0:
        raise DomainError(f"ln of nonpositive argument {a[0]}", pos)
    m = len(a) - 1
    b = [gmpy2.log(a[0])]
    for k in range(1, m + 1):
        s = a[k] - sum(j * b[j] * a[k - j] for j in range(1, k)) / k
        b.append(s / a[0])
    return b


def _sqrt(a, pos):
    if a[0] < 0:
        raise DomainError(f"sqrt of negative argument {a[0]}", pos)
    m = len(a) - 1
    if a[0] == 0 and m > 0:
        raise DomainError("sqrt is not differentiable at 0", pos)
    b = [gmpy2.sqrt(a[0])]
    for k in range(1, m + 1):
        s = a[k] - sum(b[j] * b[k - j] for j in range(1, k))
        b.append(s / (2 * b[0]))
    return b


def _sincos(a):
    m = len(a) - 1
    s, c = [gmpy2.sin(a[0])], [gmpy2.cos(a[0])]
    for k in range(1, m + 1):
        s.append(sum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k)
        c.append(-sum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k)
    return s, c


def _erf(a):
    # erf' = 2/sqrt(pi) * exp(-a^2)
    u = _exp([-v for v in _mul(a, a)])
    scale = 2 / gmpy2.sqrt(gmpy2.const_pi())
    return _integrate_rate(a, [scale * v for v in u], gmpy2.erf(a[0]))


def _pow(a, e, pos):
    if e == 0:
        return _const(a[0] * 0 + 1, len(a) - 1)
    out, base, k = None, a, abs(e)
    while k:
        if k & 1:
            out = base if out is None else _mul(out, base)
        k >>= 1
        if k:
            base = _mul(base, base)
    if e < 0:
        one = _const(a[0] * 0 + 1, len(a) - 1)
        return _div(one, out, pos)
    return out


def _jet(node, x, m):
    if isinstance(node, Var):
        return [x, x * 0 + 1] + [x * 0] * (m - 1) if m >= 1 else [x]
    if isinstance(node, Num):
        return _const(real(node.text), m)
    if isinstance(node, Pi):
        return _const(gmpy2.const_pi(), m)
    if isinstance(node, Neg):
        return [-v for v in _jet(node.arg, x, m)]
    if isinstance(node, BinOp):
        a, b = _jet(node.left, x, m), _jet(node.right, x, m)
        if node.op == "+":
            return [p + q for p, q in zip(a, b)]
        if node.op == "-":
            return [p - q for p, q in zip(a, b)]
        if node.op == "*":
            return _mul(a, b)
        return _div(a, b, node.pos)
    if isinstance(node, Pow):
        return _pow(_jet(node.base, x, m), node.exponent, node.pos)
    if isinstance(node, Call):
        a = _jet(node.arg, x, m)
        name = node.name
        if name == "exp":
            return _exp(a)
        if name == "ln":
            return _ln(a, node.pos)
        if name == "sqrt":
            return _sqrt(a, node.pos)
        if name == "sin":
            return _sincos(a)[0]
        if name == "cos":
            return _sincos(a)[1]
        return _erf(a)
    raise TypeError(f"not an expression node: {node!r}")


def jet_eval(ast, center, order: int, precision: int = DEFAULT_DIGITS) -> TaylorJet:
    """Taylor coefficients of ``ast`` at ``center`` up to ``order``."""
    if order < 1:
        raise ValueError(f"jet order must be >= 1, got {order}")
    with working(precision):
        c = real(center)
        return TaylorJet(c, tuple(_jet(ast, c, order)))


def derivatives(ast, center, order: int, precision: int = DEFAULT_DIGITS) -> list:
    """f, f', ..., f^(order) at ``center``."""
    jet = jet_eval(ast, center, order, precision)
    with working(precision):
        return [jet.derivative(k) for k in range(order + 1)]
