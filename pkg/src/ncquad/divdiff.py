"""Divided differences on equally spaced panels.

The recursion is the forward one anchored at the first node::

    dd[i][j] = (dd[i-1][j+1] - dd[i-1][j]) / (x[i+j] - x[j])

and ``divided_difference(..., k)`` returns ``dd[k][0]``.  Values may be gmpy2
mpfr numbers (evaluated at the panel's precision) or Fractions, in which case
every entry is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .precision import DEFAULT_DIGITS, real, working

__all__ = [
    "DegeneratePanelError",
    "Panel",
    "ExtendedPanel",
    "divided_difference",
    "full_table",
    "extend",
]


class DegeneratePanelError(ValueError):
    pass


def _check_distinct(x: Sequence) -> None:
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            if x[i] == x[j]:
                raise DegeneratePanelError(f"degenerate panel: nodes {i} and {j} coincide ({x[i]})")


def divided_difference(nodes: Sequence, values: Sequence, k: int):
    """f[x_1, ..., x_{k+1}] over the first k+1 nodes."""
    if len(nodes) != len(values):
        raise ValueError(f"{len(nodes)} nodes but {len(values)} values")
    if k < 0 or k > len(nodes) - 1:
        raise ValueError(f"order {k} out of range for {len(nodes)} nodes")
    x = list(nodes[: k + 1])
    _check_distinct(x)
    d = list(values[: k + 1])
    for i in range(1, k + 1):
        for j in range(k + 1 - i):
            d[j] = (d[j + 1] - d[j]) / (x[j + i] - x[j])
    return d[0]


def _leading_entries(x: Sequence, y: Sequence) -> list:
    d = list(y)
    m = len(d)
    out = [d[0]]
    for i in range(1, m):
        for j in range(m - i):
            d[j] = (d[j + 1] - d[j]) / (x[j + i] - x[j])
        out.append(d[0])
    return out


@dataclass(frozen=True)
class Panel:
    """n equally spaced nodes, their values and the step.

    ``precision`` is in decimal digits; None marks an exact (Fraction) panel.
    """

    x: tuple
    y: tuple
    h: object
    precision: int | None = DEFAULT_DIGITS

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        n = len(self.x)
        if n < 2:
            raise ValueError(f"a panel needs at least 2 nodes, got {n}")
        if len(self.y) != n:
            raise ValueError(f"{n} nodes but {len(self.y)} values")
        if not self.h > 0:
            raise ValueError(f"step must be positive, got {self.h}")
        if self.precision is None:
            tol = 0
        else:
            # rounding of the nodes scales with |x|, not with h
            scale = max(abs(self.h), abs(self.x[0]), abs(self.x[-1]))
            tol = scale * Fraction(1, 10 ** max(self.precision - 2, 0))
        for i in range(n - 1):
            gap = self.x[i + 1] - self.x[i]
            if gap == 0:
                raise DegeneratePanelError(f"degenerate panel: nodes {i} and {i + 1} coincide")
            if abs(gap - self.h) > tol:
                raise ValueError(
                    f"panel is not equally spaced: x[{i + 1}] - x[{i}] = {gap}, step {self.h}"
                )

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def sample(cls, f: Callable, start, h, n: int, precision: int | None = DEFAULT_DIGITS) -> "Panel":
        """Evaluate ``f`` on ``start + k*h`` for k = 0..n-1.

        With ``precision=None`` the nodes are Fractions and ``f`` must return
        exact values.
        """
        if precision is None:
            start, h = Fraction(start), Fraction(h)
            x = [start + k * h for k in range(n)]
            return cls(x, [f(t) for t in x], h, None)
        with working(precision):
            s, step = real(start), real(h)
            x = [s + k * step for k in range(n)]
            y = [f(t) for t in x]
            return cls(x, y, step, precision)


@dataclass(frozen=True)
class ExtendedPanel:
    """A panel plus one midpoint (n even) or two midpoints (n odd)."""

    base: Panel
    mid_x: tuple
    mid_y: tuple

    def __post_init__(self):
        want = 2 if self.base.n % 2 else 1
        if len(self.mid_x) != want or len(self.mid_y) != want:
            raise ValueError(f"a {self.base.n}-point panel takes {want} midpoint(s)")
        for m in self.mid_x:
            if m in self.base.x:
                raise DegeneratePanelError(f"midpoint {m} coincides with a base node")

    @property
    def nodes(self) -> tuple:
        return self.base.x + tuple(self.mid_x)

    @property
    def values(self) -> tuple:
        return self.base.y + tuple(self.mid_y)


def midpoints(panel: Panel) -> tuple:
    x = panel.x
    first = (x[0] + x[1]) / 2
    if panel.n % 2:
        return first, (x[-2] + x[-1]) / 2
    return (first,)


def extend(panel: Panel, f: Callable) -> ExtendedPanel:
    """Append the midpoint node(s) with fresh evaluations of ``f``."""
    if panel.precision is None:
        mids = midpoints(panel)
        return ExtendedPanel(panel, mids, tuple(f(m) for m in mids))
    with working(panel.precision):
        mids = midpoints(panel)
        return ExtendedPanel(panel, mids, tuple(f(m) for m in mids))


def full_table(panel: Panel) -> list:
    """Leading divided differences of every order 0..n-1."""
    if panel.precision is None:
        return _leading_entries(panel.x, panel.y)
    with working(panel.precision):
        return _leading_entries(panel.x, panel.y)
