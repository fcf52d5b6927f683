"""Composite rules: i panels of n nodes each, consecutive panels sharing an endpoint.

With N = (n-1)*i subintervals of width h = (b-a)/N the nodes are
x_k = a + k*h for k = 0..N, and panel k uses nodes k*(n-1) .. k*(n-1)+n-1.
The four outputs are summed panel by panel.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import gmpy2
from gmpy2 import mpq

from .divdiff import ExtendedPanel, Panel, midpoints
from .exact_poly import compute_weights
from .precision import DEFAULT_DIGITS, decimal_str, exact, real, working
from .rules import EstimateUnavailable, RuleOutput, _estimate, _simple

__all__ = [
    "CompositePlan",
    "CompositeOutput",
    "SweepRow",
    "plan",
    "plan_for_step",
    "integrate",
    "convergence_sweep",
    "sweep_cases",
    "rows_to_csv",
    "rows_to_json",
    "rows_from_json",
]

CSV_HEADER = ("h", "n", "Q", "E_tilde", "S", "E_bar", "E_true")


@dataclass(frozen=True)
class CompositePlan:
    """Partition of [a, b].  a, b and h are Fractions whenever the inputs allow."""

    a: object
    b: object
    n: int
    panels: int

    @property
    def N(self) -> int:
        return (self.n - 1) * self.panels

    @property
    def h(self):
        return (self.b - self.a) / self.N

    @property
    def exact(self) -> bool:
        return isinstance(self.a, Fraction) and isinstance(self.b, Fraction)

    def panel_nodes(self, k: int) -> range:
        """Indices (0-based) of the nodes of panel k (0-based)."""
        start = k * (self.n - 1)
        return range(start, start + self.n)

    def nodes(self, precision: int | None = DEFAULT_DIGITS) -> list:
        """x_0..x_N; exact Fractions for ``precision=None``."""
        N = self.N
        if precision is None:
            if not self.exact:
                raise ValueError("exact nodes need rational endpoints")
            h = self.h
            return [self.a + k * h for k in range(N)] + [self.b]
        with working(precision):
            if self.exact:
                a = mpq(self.a.numerator, self.a.denominator)
                h = mpq(self.h.numerator, self.h.denominator)
                xs = [gmpy2.mpfr(a + k * h) for k in range(N)]
            else:
                a, b = real(self.a), real(self.b)
                w = b - a
                xs = [a + w * k / N for k in range(N)]
            xs.append(real(self.b))
            return xs


def _endpoint(v):
    q = exact(v)
    return q if q is not None else v


def plan(a, b, n: int, i: int) -> CompositePlan:
    if n < 2:
        raise ValueError(f"panels need n >= 2 nodes, got {n}")
    if i < 1:
        raise ValueError(f"need at least one panel, got i={i}")
    a, b = _endpoint(a), _endpoint(b)
    if not b > a:
        raise ValueError(f"need b > a, got a={a}, b={b}")
    return CompositePlan(a, b, n, int(i))


def panels_for_step(a, b, n: int, h, rel_tol: float = 1e-9) -> int:
    """Number of panels i with (b - a) = (n-1) * i * h, or ValueError."""
    a, b, hq = _endpoint(a), _endpoint(b), _endpoint(h)
    if not hq > 0:
        raise ValueError(f"step must be positive, got {h}")
    if isinstance(a, Fraction) and isinstance(b, Fraction) and isinstance(hq, Fraction):
        ratio = (b - a) / ((n - 1) * hq)
        i = round(ratio)
        if i >= 1 and abs(ratio - i) <= Fraction(rel_tol) * max(1, i):
            return i
    else:
        with working(40):
            ratio = (real(b) - real(a)) / ((n - 1) * real(hq))
            i = int(gmpy2.rint(ratio))
            if i >= 1 and abs(ratio - i) <= rel_tol * max(1, i):
                return i
    raise ValueError(f"step {h} does not divide [{a}, {b}] into whole {n}-point panels")


def plan_for_step(a, b, n: int, h) -> CompositePlan:
    return plan(a, b, n, panels_for_step(a, b, n, h))


@dataclass(frozen=True)
class CompositeOutput:
    Q: object
    E_tilde: object
    S: object
    E_bar: object
    per_panel: tuple = field(repr=False)
    failed_panels: tuple = ()
    plan: CompositePlan | None = None
    precision: int | None = DEFAULT_DIGITS

    @property
    def estimate_valid(self) -> bool:
        return not self.failed_panels


def _sum(values: Sequence, exact_mode: bool):
    if exact_mode:
        return sum(values, Fraction(0))
    return gmpy2.fsum(values)


def integrate(p: CompositePlan, f: Callable, precision: int | None = DEFAULT_DIGITS) -> CompositeOutput:
    """Apply the n-point rule on every panel of ``p`` and sum the results.

    ``f`` is called once per node (shared endpoints are evaluated once) and
    once per midpoint.  Panels whose estimate cannot be formed are listed in
    ``failed_panels`` and the aggregate ``E_bar`` is then None.
    """
    exact_mode = precision is None
    weights = compute_weights(p.n)
    xs = p.nodes(precision)
    outputs: list[RuleOutput] = []
    failed = []
    ctx = working(precision) if not exact_mode else _nullcontext()
    with ctx:
        ys = [f(x) for x in xs]
        h = p.h if exact_mode else (real(p.h) if p.exact else (real(p.b) - real(p.a)) / p.N)
        step = p.n - 1
        for k in range(p.panels):
            lo = k * step
            panel = Panel(xs[lo : lo + p.n], ys[lo : lo + p.n], h, precision)
            out = _simple(panel, weights)
            mids = midpoints(panel)
            ext = ExtendedPanel(panel, mids, tuple(f(m) for m in mids))
            try:
                out = replace(out, E_bar=_estimate(panel, ext, weights, out.E_tilde))
            except EstimateUnavailable:
                failed.append(k)
            outputs.append(out)
        Q = _sum([o.Q for o in outputs], exact_mode)
        E = _sum([o.E_tilde for o in outputs], exact_mode)
        S = _sum([o.S for o in outputs], exact_mode)
        E_bar = None if failed else _sum([o.E_bar for o in outputs], exact_mode)
    return CompositeOutput(Q, E, S, E_bar, tuple(outputs), tuple(failed), p, precision)


class _nullcontext:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


@dataclass(frozen=True)
class SweepRow:
    h: object
    n: int
    Q: object
    E_tilde: object
    S: object
    E_bar: object
    E_true: object = None
    result: CompositeOutput | None = field(default=None, repr=False, compare=False)


def _reference(reference, a, b, precision):
    if reference is None:
        return None
    value = reference(a, b) if callable(reference) else reference
    if precision is None:
        q = exact(value)
        if q is None:
            raise ValueError("exact sweeps need a rational reference value")
        return q
    with working(precision):
        return real(value)


def sweep_cases(
    a,
    b,
    cases: Iterable[tuple[int, object]],
    f: Callable,
    precision: int | None = DEFAULT_DIGITS,
    reference=None,
) -> list[SweepRow]:
    """One composite run per (n, h) case.

    ``b=None`` integrates each case over its single panel [a, a + (n-1)h].
    ``reference`` is the exact integral (text, number, or a callable of the
    interval endpoints); when given, each row carries E_true = I - S.
    """
    rows = []
    for n, h in cases:
        hq = _endpoint(h)
        if b is None:
            lo = _endpoint(a)
            hi = lo + (n - 1) * hq
            p = plan(lo, hi, n, 1)
        else:
            p = plan_for_step(a, b, n, hq)
        res = integrate(p, f, precision)
        ref = _reference(reference, p.a, p.b, precision)
        e_true = None
        if ref is not None:
            if precision is None:
                e_true = ref - res.S
            else:
                with working(precision):
                    e_true = ref - res.S
        rows.append(SweepRow(hq, n, res.Q, res.E_tilde, res.S, res.E_bar, e_true, res))
    return rows


def convergence_sweep(a, b, n: int, steps: Iterable, f: Callable, precision: int | None = DEFAULT_DIGITS, reference=None) -> list[SweepRow]:
    return sweep_cases(a, b, [(n, h) for h in steps], f, precision, reference)


def _text(v) -> str:
    if v is None:
        return ""
    return decimal_str(v)


def rows_to_csv(rows: Iterable[SweepRow], out=None) -> str:
    buf = io.StringIO() if out is None else out
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_text(r.h), r.n, _text(r.Q), _text(r.E_tilde), _text(r.S), _text(r.E_bar), _text(r.E_true)])
    return buf.getvalue() if out is None else ""


def rows_to_json(rows: Iterable[SweepRow], precision: int | None = None, **kwargs) -> str:
    payload = {
        "precision": precision,
        "rows": [
            {
                "h": _text(r.h),
                "n": r.n,
                "Q": _text(r.Q),
                "E_tilde": _text(r.E_tilde),
                "S": _text(r.S),
                "E_bar": _text(r.E_bar) or None,
                "E_true": _text(r.E_true) or None,
            }
            for r in rows
        ],
    }
    return json.dumps(payload, **kwargs)


def _parse(text, precision):
    # Fractions are written as "num/den" (or a bare integer in exact mode).
    if not text:
        return None
    if precision is None or "/" in text:
        return exact(text)
    with working(precision):
        return real(text)


def rows_from_json(text: str) -> list[SweepRow]:
    d = json.loads(text)
    prec = d.get("precision")
    return [
        SweepRow(
            h=exact(r["h"]),
            n=int(r["n"]),
            Q=_parse(r["Q"], prec),
            E_tilde=_parse(r["E_tilde"], prec),
            S=_parse(r["S"], prec),
            E_bar=_parse(r["E_bar"], prec),
            E_true=_parse(r["E_true"], prec),
        )
        for r in d["rows"]
    ]
