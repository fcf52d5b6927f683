"""Exact rational polynomials and the weights of the extended left-rectangle rule.

All quantities are computed in unit-step form: nodes sit at t = 0, 1, ..., n-1
and a coefficient that multiplies ``h**p`` in the real rule is stored as the
pair ``(Fraction, p)``.  Divided differences only depend on node distances, so
nothing is lost by fixing x_1 = 0 and h = 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "RationalPoly",
    "WeightSet",
    "newton_basis",
    "integrate_poly",
    "compute_weights",
    "basis_integrals",
    "nodal_weights",
]


class RationalPoly:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[k]`` multiplies ``t**k``.  Trailing zeros are stripped so the
    leading coefficient is nonzero unless the polynomial is zero (empty).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def monomial(cls, k: int) -> "RationalPoly":
        return cls([0] * k + [1])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def __call__(self, t):
        acc = 0
        for c in reversed(self._c):
            acc = acc * t + c
        return acc

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-c for c in self._c])

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            return RationalPoly([c * Fraction(other) for c in self._c])
        if not self._c or not other._c:
            return RationalPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if x:
                for j, y in enumerate(other._c):
                    out[i + j] += x * y
        return RationalPoly(out)

    __rmul__ = __mul__

    def shift_root(self, r) -> "RationalPoly":
        """Return ``self * (t - r)``."""
        r = Fraction(r)
        c = self._c
        out = [Fraction(0)] * (len(c) + 1)
        for i, x in enumerate(c):
            out[i + 1] += x
            out[i] -= r * x
        return RationalPoly(out)

    def antiderivative(self) -> "RationalPoly":
        return RationalPoly([0] + [c / (k + 1) for k, c in enumerate(self._c)])

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"RationalPoly({[str(c) for c in self._c]})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and k > 0) else str(mag)
            var = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            body = coef + ("*" if coef and var else "") + var
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def newton_basis(n: int) -> list[RationalPoly]:
    """Newton polynomials w_0..w_n for the unit-step nodes 0, 1, 2, ...

    w_0 = 1 and w_j = w_{j-1} * (t - (j-1)), so w_j vanishes at 0..j-1.
    """
    if n < 1:
        raise ValueError(f"newton_basis needs n >= 1, got {n}")
    return list(_basis(n))


@lru_cache(maxsize=None)
def _basis(n: int) -> tuple[RationalPoly, ...]:
    w = [RationalPoly([1])]
    for j in range(1, n + 1):
        w.append(w[-1].shift_root(j - 1))
    return tuple(w)


def integrate_poly(p: RationalPoly, lower, upper) -> Fraction:
    P = p.antiderivative()
    return P(Fraction(upper)) - P(Fraction(lower))


@dataclass(frozen=True)
class WeightSet:
    """Exact weights a_1..a_n of the n-point rule plus its error coefficient.

    ``weights[i]`` is ``(r, i + 1)`` meaning ``r * h**(i + 1)``.
    ``error_coeff`` is I(w_{n+1})/I(w_1) for odd n and I(w_n)/I(w_1) for even
    n, again as ``(r, power_of_h)``.
    """

    n: int
    weights: tuple[tuple[Fraction, int], ...]
    error_coeff: tuple[Fraction, int]
    degree: int

    @property
    def odd(self) -> bool:
        return self.n % 2 == 1

    def ratios(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _ in self.weights)

    def to_dict(self) -> dict:
        def enc(pair):
            r, p = pair
            return {"num": str(r.numerator), "den": str(r.denominator), "h_power": p}

        return {
            "n": self.n,
            "weights": [enc(w) for w in self.weights],
            "error_coeff": enc(self.error_coeff),
            "degree": self.degree,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "WeightSet":
        def dec(e):
            return Fraction(int(e["num"]), int(e["den"])), int(e["h_power"])

        return cls(
            n=int(d["n"]),
            weights=tuple(dec(e) for e in d["weights"]),
            error_coeff=dec(d["error_coeff"]),
            degree=int(d["degree"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "WeightSet":
        return cls.from_dict(json.loads(text))


@lru_cache(maxsize=None)
def compute_weights(n: int) -> WeightSet:
    """Weights a_i = integral of w_{i-1} over [0, n-1] for the n-point rule."""
    if n < 2:
        raise ValueError(f"a rule needs at least 2 nodes, got n={n}")
    w = _basis(n + 1)
    top = n - 1
    weights = tuple((integrate_poly(w[i], 0, top), i + 1) for i in range(n))
    i_w1 = weights[1][0]
    if n % 2:
        coeff = (integrate_poly(w[n + 1], 0, top) / i_w1, n)
        degree = n
    else:
        coeff = (integrate_poly(w[n], 0, top) / i_w1, n - 1)
        degree = n - 1
    return WeightSet(n=n, weights=weights, error_coeff=coeff, degree=degree)


def basis_integrals(n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Integrals of w_n over [0, n-1], [0, n] and [0, n-2] (unit step)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    wn = _basis(n)[n]
    return (
        integrate_poly(wn, 0, n - 1),
        integrate_poly(wn, 0, n),
        integrate_poly(wn, 0, n - 2),
    )


def nodal_weights(n: int) -> tuple[Fraction, ...]:
    """Classical nodal weights c_1..c_n (unit step) from the Newton-form weights.

    f[x_1..x_k] = sum_j f_j / prod_{m != j, m < k} (j - m), so the rule
    a_1 f_1 + sum_k a_k f[x_1..x_k] regroups as sum_j c_j f_j.
    """
    ws = compute_weights(n)
    c = [Fraction(0)] * n
    for k, (a, _) in enumerate(ws.weights):
        for j in range(k + 1):
            den = 1
            for m in range(k + 1):
                if m != j:
                    den *= j - m
            c[j] += a / den
    return tuple(c)


def weight_table(ns: Sequence[int]) -> list[WeightSet]:
    return [compute_weights(n) for n in ns]
