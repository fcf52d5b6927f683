"""Command-line front end.

Usage::

    ncquad integrate -f "1/ln(x)" -a 100000 -b 200000 -n 3 --step 5 -p 32
    ncquad sweep -f "sqrt(x)" -a 0 -n 2 --step 0.1 --step 0.05 --antiderivative "2/3*x*sqrt(x)"
    ncquad weights 9
    ncquad gcheck -f "exp(-x^2)" -a 0 -b 1 -n 3 --step 0.5

Exit codes: 0 ok, 2 input error, 3 error estimate unavailable.
"""

from __future__ import annotations

import json
import math
import sys

import click
import gmpy2

from .composite import (
    SweepRow,
    integrate as integrate_plan,
    panels_for_step,
    plan,
    rows_to_csv,
    rows_to_json,
    sweep_cases,
)
from .diagnostics import DEFAULT_GRID, check_condition
from .divdiff import Panel, divided_difference, extend
from .exact_poly import compute_weights
from .expr import DomainError, ExprSyntaxError, _ev, compile_expr, constant_value, parse
from .precision import DEFAULT_DIGITS, decimal_str, exact, fixed, real, scientific, working
from .rules import is_realistic

EXIT_INPUT = 2
EXIT_NO_ESTIMATE = 3

FORMATS = click.Choice(["table", "csv", "json"])


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _expr(text: str):
    try:
        return parse(text)
    except ExprSyntaxError as e:
        pointer = " " * e.pos + "^"
        raise InputError(f"{e}\n  {text}\n  {pointer}")


def _bound(text: str, precision: int):
    q = exact(text)
    if q is not None:
        return q
    try:
        return constant_value(_expr(text), precision)
    except ValueError as e:
        raise InputError(f"bad bound {text!r}: {e}")


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _lost_digits(f, a, h, n: int, precision: int) -> float | None:
    """Rough count of digits cancelled in the top divided difference of the first panel."""
    with working(precision):
        panel = Panel.sample(f, a, h, n, precision)
        ext = extend(panel, f)
        order = n + 1 if n % 2 else n
        top = divided_difference(ext.nodes, ext.values, order)
        scale = max(abs(v) for v in ext.values)
        if top == 0 or scale == 0:
            return None
        return float(gmpy2.log10(scale) - gmpy2.log10(abs(top)) - order * gmpy2.log10(real(h)))


def _warn_precision(f, a, h, n, precision) -> None:
    try:
        lost = _lost_digits(f, a, h, n, precision)
    except (ArithmeticError, ValueError):
        return
    if lost is not None and lost > precision - 3:
        need = math.ceil(lost) + 6
        click.echo(
            f"warning: about {lost:.0f} of {precision} digits cancel in the error estimate; "
            f"use -p {need} or more",
            err=True,
        )


@click.group()
def main():
    """Extended left-rectangle quadrature with realistic error estimates."""


@main.command()
@click.option("-f", "--function", "function", required=True, help="integrand in x")
@click.option("-a", "a_text", required=True, help="lower bound")
@click.option("-b", "b_text", required=True, help="upper bound")
@click.option("-n", "n", type=click.IntRange(min=2), required=True, help="points per panel")
@click.option("--panels", type=click.IntRange(min=1), default=None)
@click.option("--step", default=None, help="step h; must give whole panels")
@click.option("-p", "--precision", type=click.IntRange(min=1), default=DEFAULT_DIGITS, show_default=True)
@click.option("--reference", default=None, help="exact integral as decimal text")
@click.option("--format", "fmt", type=FORMATS, default="table", show_default=True)
@click.option("--per-panel", is_flag=True, help="include every panel's outputs")
@click.option("-o", "output", type=click.Path(dir_okay=False), default=None)
def integrate(function, a_text, b_text, n, panels, step, precision, reference, fmt, per_panel, output):
    """Composite rule on [a, b]: Q, E_tilde, S and the estimate E_bar."""
    if (panels is None) == (step is None):
        raise InputError("give exactly one of --panels and --step")
    ast = _expr(function)
    a, b = _bound(a_text, precision), _bound(b_text, precision)
    try:
        i = panels if panels is not None else panels_for_step(a, b, n, step)
        p = plan(a, b, n, i)
        f = compile_expr(ast)
        res = integrate_plan(p, f, precision)
        with working(precision):
            ref = real(reference) if reference is not None else None
            e_true = ref - res.S if ref is not None else None
    except (ValueError, DomainError, ZeroDivisionError) as e:
        raise InputError(str(e))

    _warn_precision(f, p.a, p.h, n, precision)
    verdict = None
    if e_true is not None and res.E_bar is not None:
        verdict = is_realistic(res.E_bar, e_true)

    if fmt == "json":
        payload = {
            "n": n,
            "panels": p.panels,
            "h": decimal_str(p.h),
            "precision": precision,
            "Q": decimal_str(res.Q),
            "E_tilde": decimal_str(res.E_tilde),
            "S": decimal_str(res.S),
            "E_bar": None if res.E_bar is None else decimal_str(res.E_bar),
            "E_true": None if e_true is None else decimal_str(e_true),
            "realistic": verdict,
            "failed_panels": list(res.failed_panels),
        }
        if per_panel:
            payload["per_panel"] = [
                {
                    "Q": decimal_str(o.Q),
                    "correction_terms": [decimal_str(t) for t in o.correction_terms],
                    "E_tilde": decimal_str(o.E_tilde),
                    "S": decimal_str(o.S),
                    "E_bar": None if o.E_bar is None else decimal_str(o.E_bar),
                }
                for o in res.per_panel
            ]
        _emit(json.dumps(payload, indent=2) + "\n", output)
    elif fmt == "csv":
        row = SweepRow(p.h, n, res.Q, res.E_tilde, res.S, res.E_bar, e_true)
        _emit(rows_to_csv([row]), output)
    else:
        digits = precision
        lines = [
            f"n = {n}, panels = {p.panels}, h = {decimal_str(p.h)}, precision = {precision}",
            f"Q       = {fixed(res.Q, digits)}",
            f"E_tilde = {fixed(res.E_tilde, digits)}",
            f"S       = {fixed(res.S, digits)}",
            "E_bar   = " + ("unavailable" if res.E_bar is None else scientific(res.E_bar, 8)),
        ]
        if e_true is not None:
            lines.append(f"E_true  = {scientific(e_true, 8)}")
        if verdict is not None:
            lines.append("verdict = " + ("realistic" if verdict else "not realistic"))
        if res.failed_panels:
            lines.append(f"failed panels: {list(res.failed_panels)}")
        if per_panel:
            for k, o in enumerate(res.per_panel):
                eb = "unavailable" if o.E_bar is None else scientific(o.E_bar, 8)
                lines.append(
                    f"  panel {k}: Q={fixed(o.Q, digits)} E_tilde={fixed(o.E_tilde, digits)} "
                    f"S={fixed(o.S, digits)} E_bar={eb}"
                )
        _emit("\n".join(lines) + "\n", output)

    if res.failed_panels:
        click.echo(
            f"error estimate unavailable: f[x1,x2] vanishes on {len(res.failed_panels)} panel(s)",
            err=True,
        )
        sys.exit(EXIT_NO_ESTIMATE)


@main.command()
@click.option("-f", "--function", "function", required=True)
@click.option("-a", "a_text", required=True)
@click.option("-b", "b_text", default=None, help="omit to integrate each step over one panel [a, a+(n-1)h]")
@click.option("-n", "ns", type=click.IntRange(min=2), multiple=True, required=True)
@click.option("--step", "steps", multiple=True, help="repeatable; paired with -n when -n is repeated")
@click.option("-p", "--precision", type=click.IntRange(min=1), default=DEFAULT_DIGITS, show_default=True)
@click.option("--reference", default=None, help="exact integral over [a, b] as decimal text")
@click.option("--antiderivative", default=None, help="F(x) with F' = f; gives the reference per row")
@click.option("--format", "fmt", type=FORMATS, default="table", show_default=True)
@click.option("-o", "output", type=click.Path(dir_okay=False), default=None)
def sweep(function, a_text, b_text, ns, steps, precision, reference, antiderivative, fmt, output):
    """One row per (n, h): E_bar and, given a reference, the true error."""
    if reference is not None and antiderivative is not None:
        raise InputError("give at most one of --reference and --antiderivative")
    if reference is not None and b_text is None:
        raise InputError("--reference needs a fixed -b")
    if len(ns) == 1:
        cases = [(ns[0], s) for s in steps]
    elif len(ns) == len(steps):
        cases = list(zip(ns, steps))
    else:
        raise InputError(f"{len(ns)} values of -n do not pair with {len(steps)} steps")
    if not cases:
        if fmt == "csv":
            _emit(rows_to_csv([]), output)
        elif fmt == "json":
            _emit(rows_to_json([], precision) + "\n", output)
        return

    ast = _expr(function)
    a = _bound(a_text, precision)
    b = _bound(b_text, precision) if b_text is not None else None
    ref = reference
    if antiderivative is not None:
        F = _expr(antiderivative)

        def ref(lo, hi):
            with working(precision):
                return _eval_at(F, hi) - _eval_at(F, lo)

    try:
        rows = sweep_cases(a, b, [(n, _step(s)) for n, s in cases], compile_expr(ast), precision, ref)
    except (ValueError, DomainError, ZeroDivisionError) as e:
        raise InputError(str(e))

    if fmt == "csv":
        _emit(rows_to_csv(rows), output)
    elif fmt == "json":
        _emit(rows_to_json(rows, precision, indent=2) + "\n", output)
    else:
        head = f"{'n':>3}  {'h':>10}  {'E_bar':>16}  {'E_true':>16}  verdict"
        lines = [head]
        for r in rows:
            eb = "unavailable" if r.E_bar is None else scientific(r.E_bar, 6)
            et = "" if r.E_true is None else scientific(r.E_true, 6)
            verdict = ""
            if r.E_true is not None and r.E_bar is not None:
                verdict = "realistic" if is_realistic(r.E_bar, r.E_true) else "not realistic"
            lines.append(f"{r.n:>3}  {decimal_str(r.h):>10}  {eb:>16}  {et:>16}  {verdict}".rstrip())
        _emit("\n".join(lines) + "\n", output)
    if any(r.E_bar is None for r in rows):
        sys.exit(EXIT_NO_ESTIMATE)


def _step(text: str):
    q = exact(text)
    if q is None:
        raise InputError(f"bad step {text!r}")
    return q


def _eval_at(ast, x):
    return _ev(ast, real(x))


@main.command()
@click.argument("n", type=click.IntRange(min=2))
@click.option("--format", "fmt", type=FORMATS, default="table", show_default=True)
@click.option("-o", "output", type=click.Path(dir_okay=False), default=None)
def weights(n, fmt, output):
    """Exact weights a_1..a_n (times h^1..h^n) of the n-point rule."""
    ws = compute_weights(n)
    if fmt == "json":
        _emit(ws.to_json(indent=2) + "\n", output)
        return
    if fmt == "csv":
        lines = ["j,num,den,h_power"]
        lines += [f"{j},{r.numerator},{r.denominator},{p}" for j, (r, p) in enumerate(ws.weights, 1)]
        _emit("\n".join(lines) + "\n", output)
        return
    r, p = ws.error_coeff
    lines = [f"n = {n}, degree = {ws.degree}"]
    lines += [f"a_{j} = {r_} h^{p_}" for j, (r_, p_) in enumerate(ws.weights, 1)]
    ratio = "I(w_{n+1})/I(w_1)" if n % 2 else "I(w_n)/I(w_1)"
    lines.append(f"{ratio} = {r} h^{p}")
    _emit("\n".join(lines) + "\n", output)


@main.command()
@click.option("-f", "--function", "function", required=True)
@click.option("-a", "a_text", required=True)
@click.option("-b", "b_text", required=True)
@click.option("-n", "n", type=click.IntRange(min=2), required=True)
@click.option("--step", required=True)
@click.option("--grid", type=click.IntRange(min=2), default=DEFAULT_GRID, show_default=True)
@click.option("-p", "--precision", type=click.IntRange(min=1), default=DEFAULT_DIGITS, show_default=True)
@click.option("-o", "output", type=click.Path(dir_okay=False), default=None, help="CSV of (x, g) samples")
def gcheck(function, a_text, b_text, n, step, grid, precision, output):
    """Sample g(x, h) on (a, b) and report whether g >= h."""
    ast = _expr(function)
    a, b = _bound(a_text, precision), _bound(b_text, precision)
    h = _bound(step, precision)
    try:
        rep = check_condition(ast, a, b, n, h, grid, precision)
    except (ValueError, DomainError, ZeroDivisionError) as e:
        raise InputError(str(e))
    if output:
        with open(output, "w", newline="") as fh:
            rep.to_csv(fh)
    click.echo(f"n = {n}, h = {decimal_str(h)}, grid = {grid}")
    click.echo("min g = " + ("n/a" if rep.min_g is None else fixed(rep.min_g, 8)))
    click.echo(f"condition g >= h holds: {'yes' if rep.condition_holds else 'no'}")
    click.echo(f"f' zero suspected: {'yes' if rep.fprime_zero_suspected else 'no'}")
    if rep.excluded:
        click.echo(f"samples excluded (f' ~ 0): {rep.excluded}")


if __name__ == "__main__":
    main()
