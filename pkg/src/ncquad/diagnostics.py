"""Checks of the hypotheses behind the error estimate.

The estimate is trustworthy when f' does not vanish and::

    g(x, h) = |1 + sum_{j=2}^{n-1} (a_{j+1}/a_2) f^(j)(x) / (j! f'(x))| >= h

on the integration interval.  ``a_{j+1}/a_2`` carries h^(j-1), and
f^(j)/j! is just the j-th Taylor coefficient, so g only needs one jet of
order n-1 per sample point.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .exact_poly import WeightSet, compute_weights
from .jets import _jet
from .precision import DEFAULT_DIGITS, real, working

__all__ = ["GCheckReport", "g_function", "check_condition"]

DEFAULT_GRID = 512


def _g_from_jet(c, h, weights: WeightSet):
    r = weights.ratios()
    total = real(1)
    hp = real(1)
    for j in range(2, weights.n):
        hp = hp * h
        total += real(r[j] / r[1]) * hp * c[j] / c[1]
    return abs(total)


def g_function(ast, x, h, weights: WeightSet | int, precision: int = DEFAULT_DIGITS):
    """g(x, h) for the rule described by ``weights`` (or its node count)."""
    if isinstance(weights, int):
        weights = compute_weights(weights)
    with working(precision):
        xr, hr = real(x), real(h)
        c = _jet(ast, xr, max(weights.n - 1, 1))
        if c[1] == 0:
            raise ZeroDivisionError(f"f'({x}) = 0, g is undefined there")
        return _g_from_jet(c, hr, weights)


@dataclass(frozen=True)
class GCheckReport:
    n: int
    h: object
    samples: tuple = field(repr=False)
    min_g: object
    condition_holds: bool
    fprime_zero_suspected: bool
    excluded: int = 0

    def to_csv(self, out=None) -> str:
        buf = io.StringIO() if out is None else out
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("x", "g"))
        for x, g in self.samples:
            w.writerow((str(x), "" if g is None else str(g)))
        return buf.getvalue() if out is None else ""


def check_condition(
    ast,
    a,
    b,
    n: int,
    h,
    grid_points: int = DEFAULT_GRID,
    precision: int = DEFAULT_DIGITS,
) -> GCheckReport:
    """Sample g on ``grid_points`` interior points of (a, b) and compare with h.

    Samples where f' is negligible (relative to the largest |f'| on the grid)
    are reported with g = None, left out of ``min_g``, and raise
    ``fprime_zero_suspected``; so does a sign change of f' between samples.
    """
    if grid_points < 2:
        raise ValueError(f"need at least 2 grid points, got {grid_points}")
    weights = compute_weights(n)
    order = max(n - 1, 1)
    with working(precision):
        A, B, H = real(a), real(b), real(h)
        xs = [A + (B - A) * k / (grid_points + 1) for k in range(1, grid_points + 1)]
        jets = [_jet(ast, x, order) for x in xs]
        fp = [c[1] for c in jets]
        biggest = max(abs(v) for v in fp)
        tiny = biggest * real(10) ** (-(precision // 2))
        samples = []
        suspected = biggest == 0
        excluded = 0
        prev = None
        for x, c in zip(xs, jets):
            if abs(c[1]) <= tiny:
                samples.append((x, None))
                suspected = True
                excluded += 1
                continue
            if prev is not None and (prev < 0) != (c[1] < 0):
                suspected = True
            prev = c[1]
            samples.append((x, _g_from_jet(c, H, weights)))
        values = [g for _, g in samples if g is not None]
        min_g = min(values) if values else None
        holds = min_g is not None and min_g >= H
    return GCheckReport(n, H, tuple(samples), min_g, holds, suspected, excluded)
