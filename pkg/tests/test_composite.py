import math
from fractions import Fraction as F

import gmpy2
import pytest

from ncquad.composite import (
    CSV_HEADER,
    convergence_sweep,
    integrate,
    panels_for_step,
    plan,
    plan_for_step,
    rows_from_json,
    rows_to_csv,
    rows_to_json,
    sweep_cases,
)
from ncquad.precision import real, working
from ncquad.rules import apply_rule
from oracles import log_integral, sig_match, sin2x_integral


def inv_log(t):
    return 1 / gmpy2.log(t)


def sin2x(t):
    return gmpy2.sin(2 * t)


class TestPlan:
    def test_small_partition(self):
        p = plan(0, 1, 3, 2)
        assert p.N == 4 and p.h == F(1, 4)
        assert list(p.panel_nodes(0)) == [0, 1, 2] and list(p.panel_nodes(1)) == [2, 3, 4]
        assert p.nodes(None) == [0, F(1, 4), F(1, 2), F(3, 4), 1]

    def test_step_determines_panel_count(self):
        assert panels_for_step(100000, 200000, 3, 5) == 10**4
        assert plan_for_step(100000, 200000, 7, F(5, 3)).panels == 10**4

    def test_decimal_text_endpoints_are_exact(self):
        p = plan_for_step("0", "0.1", 2, "0.025")
        assert p.panels == 4 and p.h == F(1, 40)

    def test_last_node_is_b(self):
        with working(20):
            xs = plan(0, 1, 3, 5).nodes(20)
        assert xs[-1] == 1 and len(xs) == 11

    @pytest.mark.parametrize("args", [(1, 0, 3, 1), (0, 1, 1, 1), (0, 1, 3, 0)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            plan(*args)

    def test_step_not_commensurate(self):
        with pytest.raises(ValueError, match="does not divide"):
            plan_for_step(0, 1, 3, F(1, 3))


def test_single_panel_is_the_simple_rule():
    res = integrate(plan(0, F(3, 4), 7, 1), sin2x, 30)
    simple = apply_rule(sin2x, 0, F(1, 8), 7, 30)
    assert res.S == simple.S and res.E_bar == simple.E_bar and res.Q == simple.Q


def test_constant_integrand():
    res = integrate(plan(F(-1), F(2), 5, 3), lambda t: F(7), None)
    assert (res.Q, res.E_tilde, res.S, res.E_bar) == (21, 0, 21, 0)


def test_aggregates_are_panel_sums():
    res = integrate(plan(2, 4, 5, 6), inv_log, 30)
    with working(30):
        for name in ("Q", "E_tilde", "S", "E_bar"):
            assert getattr(res, name) == gmpy2.fsum([getattr(o, name) for o in res.per_panel])


def test_additivity_over_a_shared_node():
    with working(20):
        whole = integrate(plan(2, 4, 3, 8), inv_log, 20).S
        left = integrate(plan(2, 3, 3, 4), inv_log, 20).S
        right = integrate(plan(3, 4, 3, 4), inv_log, 20).S
        ulp = gmpy2.next_above(whole) - whole
        assert abs(whole - (left + right)) <= 10 * ulp


def test_composite_converges_to_the_integral():
    rows = convergence_sweep(0, F(1, 2), 5, [F(1, 8), F(1, 16)], sin2x, 30, reference=sin2x_integral(F(1, 2)))
    for r in rows:
        assert abs(r.E_true) < 1e-6


def test_estimate_order_for_odd_n():
    steps = [F(1, 2**k) for k in range(3, 7)]
    rows = convergence_sweep(0, F(1, 2), 5, steps, sin2x, 40)
    for coarse, fine in zip(rows, rows[1:]):
        rate = math.log2(float(coarse.E_bar / fine.E_bar))
        assert abs(rate - 6) <= 0.5


def test_failed_panel_is_recorded():
    f = lambda t: (t - F(5, 2)) ** 2
    res = integrate(plan(0, 4, 3, 2), f, None)
    assert res.failed_panels == (1,) and res.E_bar is None and not res.estimate_valid
    assert res.S == F(19, 3)
    assert res.per_panel[0].E_bar is not None


def test_empty_sweep():
    assert convergence_sweep(0, 1, 3, [], sin2x) == []


def test_single_panel_sweep_uses_a_reference_callable():
    rows = sweep_cases(0, None, [(2, "0.1"), (2, "0.05")], gmpy2.sqrt, 30,
                       reference=lambda a, b: real(2) / 3 * real(b) ** real(1.5))
    assert sig_match(rows[0].E_bar, "0.00436619", 6)
    assert sig_match(rows[0].E_true, "0.00527046", 6)
    assert sig_match(rows[1].E_true, "0.00186339", 6)


def test_example_with_step_five():
    rows = convergence_sweep(100000, 200000, 3, [5], inv_log, 32, reference=log_integral(100000, 200000))
    r = rows[0]
    assert sig_match(r.S, "8406.2431208462027087", 20)
    assert sig_match(r.E_bar, "-5.9854000e-17", 7)
    assert sig_match(r.E_true, "-5.9854472e-17", 7)


class TestSerialisation:
    def rows(self, precision):
        return convergence_sweep(0, 1, 3, [F(1, 2), F(1, 4)], lambda t: 1 / (1 + t), precision, reference="0.69314718055994530941723212145817656807")

    def test_json_round_trip(self):
        rows = self.rows(30)
        again = rows_from_json(rows_to_json(rows, 30))
        assert again == rows

    def test_exact_json_round_trip(self):
        rows = convergence_sweep(0, 1, 3, [F(1, 2)], lambda t: 1 / (1 + t), None, reference=F(7, 10))
        again = rows_from_json(rows_to_json(rows, None))
        assert again == rows and isinstance(again[0].S, F)

    def test_csv(self):
        text = rows_to_csv(self.rows(20))
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 3 and lines[1].startswith("1/2,3,")
