"""Potential families: parsing, evaluation, turning points, closed-form Q."""

import math

import pytest

from turnpoint import potentials
from turnpoint.errors import DomainError, SpecParseError
from turnpoint.potentials import (
    Expression,
    HarmonicOscillator,
    InfiniteSquareWell,
    ParabolicWell,
    QuadraticInverse,
    Step,
    TrigWell,
    UnitSystem,
    VWell,
    parse_potential_spec,
    spec_to_dict,
)

U = UnitSystem()


class TestSpecParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("isw:L=2", InfiniteSquareWell(L=2.0)),
            ("sho:omega=1.5", HarmonicOscillator(omega=1.5)),
            ("trig:u0=1,a=2", TrigWell(u0=1.0, a=2.0)),
            ("vwell:u0=3", VWell(u0=3.0)),
            ("parab:u0=1,a=1", ParabolicWell(u0=1.0, a=1.0)),
            ("axb:a=1,b=2", QuadraticInverse(a=1.0, b=2.0)),
            ("step:u0=4", Step(u0=4.0)),
        ],
    )
    def test_families(self, text, expected):
        assert parse_potential_spec(text) == expected

    def test_key_order_and_spaces_do_not_matter(self):
        assert parse_potential_spec(" trig: a=2 , u0=1 ") == TrigWell(u0=1.0, a=2.0)

    def test_expression_spec(self):
        spec = parse_potential_spec("expr:0.5*x^2;domain=-10..10")
        assert isinstance(spec, Expression)
        assert spec.dom.lo == -10.0
        assert spec.dom.hi == 10.0
        assert potentials.evaluate(spec, 2.0, U) == 2.0

    @pytest.mark.parametrize(
        "text",
        [
            "nofamily",
            "bogus:z=1",
            "sho:omega",
            "sho:omega=abc",
            "sho:",
            "sho:omega=1,extra=2",
            "sho:omega=-1",
            "expr:x^2",
            "expr:x^2;domain=5..1",
            "expr:x^2;domain=a..b",
            "isw:l=0",
        ],
    )
    def test_malformed_specs(self, text):
        with pytest.raises(SpecParseError):
            parse_potential_spec(text)

    def test_spec_to_dict_round_trip(self):
        doc = spec_to_dict(TrigWell(u0=1.0, a=2.0))
        assert doc == {"kind": "trig", "u0": 1.0, "a": 2.0}

    def test_spec_to_dict_expression(self):
        doc = spec_to_dict(parse_potential_spec("expr:x^2;domain=-1..1"))
        assert doc == {"kind": "expr", "source": "x^2", "domain": {"lo": -1.0, "hi": 1.0}}


class TestEvaluate:
    def test_isw_zero_inside_walls_outside(self):
        spec = InfiniteSquareWell(L=1.0)
        assert potentials.evaluate(spec, 0.5, U) == 0.0
        with pytest.raises(DomainError):
            potentials.evaluate(spec, 1.5, U)

    def test_sho_quadratic(self):
        spec = HarmonicOscillator(omega=2.0)
        # U = m omega^2 x^2 / 2
        assert potentials.evaluate(spec, 3.0, U) == pytest.approx(18.0, rel=1e-15)

    def test_trig_cot_squared(self):
        spec = TrigWell(u0=2.0, a=1.0)
        x = 0.25
        expected = 2.0 / math.tan(math.pi * x) ** 2
        assert potentials.evaluate(spec, x, U) == pytest.approx(expected, rel=1e-14)
        with pytest.raises(DomainError):
            potentials.evaluate(spec, 0.0, U)

    def test_vwell_absolute_value(self):
        spec = VWell(u0=2.0)
        assert potentials.evaluate(spec, -3.0, U) == 6.0
        assert potentials.evaluate(spec, 3.0, U) == 6.0

    def test_parab_zero_at_x_equals_a(self):
        spec = ParabolicWell(u0=1.0, a=2.0)
        assert potentials.evaluate(spec, 2.0, U) == 0.0
        with pytest.raises(DomainError):
            potentials.evaluate(spec, 0.0, U)

    def test_axb_minimum_value(self):
        spec = QuadraticInverse(a=1.0, b=4.0)
        # minimum 2 sqrt(ab) at x = (b/a)^(1/4)
        x_min = (4.0) ** 0.25
        assert potentials.evaluate(spec, x_min, U) == pytest.approx(4.0, rel=1e-14)
        assert potentials.u_min(spec) == pytest.approx(4.0, rel=1e-14)

    def test_step_two_plateaus(self):
        spec = Step(u0=3.0)
        assert potentials.evaluate(spec, -1.0, U) == 0.0
        assert potentials.evaluate(spec, 1.0, U) == 3.0

    def test_expression_outside_domain(self):
        spec = parse_potential_spec("expr:x^2;domain=-1..1")
        with pytest.raises(DomainError):
            potentials.evaluate(spec, 2.0, U)


class TestAnalyticTurningPoints:
    @pytest.mark.parametrize(
        "spec,E",
        [
            (HarmonicOscillator(omega=1.0), 1.3),
            (TrigWell(u0=1.0, a=1.0), 2.7),
            (VWell(u0=2.0), 1.1),
            (ParabolicWell(u0=1.0, a=1.0), 0.9),
            (QuadraticInverse(a=1.0, b=1.0), 5.0),
        ],
    )
    def test_points_satisfy_u_equals_e(self, spec, E):
        pairs = potentials.analytic_turning_points(spec, E, U)
        assert pairs is not None
        for tp in pairs:
            assert potentials.evaluate(spec, tp.x1, U) == pytest.approx(E, rel=1e-9)
            assert potentials.evaluate(spec, tp.x2, U) == pytest.approx(E, rel=1e-9)
            assert tp.d > 0.0

    def test_isw_full_width(self):
        (tp,) = potentials.analytic_turning_points(InfiniteSquareWell(L=2.0), 1.0, U)
        assert (tp.x1, tp.x2) == (0.0, 2.0)
        assert tp.x0 == 1.0
        assert tp.d == 2.0

    def test_axb_mirrored_pair(self):
        pairs = potentials.analytic_turning_points(QuadraticInverse(a=1.0, b=1.0), 5.0, U)
        assert len(pairs) == 2
        neg, pos = pairs
        assert neg.x2 < 0.0 < pos.x1
        assert neg.x1 == pytest.approx(-pos.x2, rel=1e-14)

    def test_none_for_step_and_expression(self):
        assert potentials.analytic_turning_points(Step(u0=1.0), 2.0, U) is None
        expr = parse_potential_spec("expr:x^2;domain=-5..5")
        assert potentials.analytic_turning_points(expr, 1.0, U) is None


class TestAnalyticQ:
    def test_isw_is_zero(self):
        assert potentials.analytic_q(InfiniteSquareWell(L=1.0), 0.5, U) == 0.0

    def test_sho_quadratic_coefficient(self):
        # Q = a x^2 with a = m omega / (2 hbar)
        spec = HarmonicOscillator(omega=3.0)
        assert potentials.analytic_q(spec, 2.0, U) == pytest.approx(6.0, rel=1e-15)

    def test_vwell_even_in_x(self):
        spec = VWell(u0=1.0)
        assert potentials.analytic_q(spec, -1.5, U) == potentials.analytic_q(spec, 1.5, U)

    def test_derivative_matches_m1_sqrt_u(self):
        # dQ/dx = m1 sqrt(U) away from kinks and poles
        cases = [
            (HarmonicOscillator(omega=1.0), 0.7),
            (TrigWell(u0=1.0, a=1.0), 0.3),
            (VWell(u0=2.0), 0.9),
            (ParabolicWell(u0=1.0, a=1.0), 0.6),
            (QuadraticInverse(a=1.0, b=1.0), 1.4),
        ]
        h = 1e-6
        for spec, x in cases:
            q_plus = potentials.analytic_q(spec, x + h, U)
            q_minus = potentials.analytic_q(spec, x - h, U)
            slope = (q_plus - q_minus) / (2.0 * h)
            expected = U.m1 * math.sqrt(potentials.evaluate(spec, x, U))
            assert abs(abs(slope) - expected) < 1e-5 * (1.0 + expected)

    def test_none_for_step_and_expression(self):
        assert potentials.analytic_q(Step(u0=1.0), 1.0, U) is None
        expr = parse_potential_spec("expr:x^2;domain=-5..5")
        assert potentials.analytic_q(expr, 0.5, U) is None


class TestUnitSystem:
    def test_m1_definition(self):
        u = UnitSystem(hbar=2.0, mass=8.0)
        assert u.m1 == math.sqrt(2.0 * 8.0) / 2.0

    def test_positive_required(self):
        with pytest.raises(Exception):
            UnitSystem(hbar=0.0, mass=1.0)
