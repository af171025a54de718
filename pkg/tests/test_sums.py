"""Direct summation engine: stopping rules, certified bounds, inner kernels."""

import math

import pytest

from helpers import quad_family_sum
from zetasums import (
    MIN_EXPLICIT,
    DomainError,
    Family,
    Method,
    Sign,
    StopRule,
    SumSpec,
    TermBudgetError,
    Tolerance,
    alternating_inner_power_sum,
    convergence_threshold,
    eval_direct,
    even_arg_moment_closed,
    floor_crossing_arg,
    hurwitz_tail_bound,
    inner_power_sum,
    kappa_closed,
    moment_alt_closed,
    moment_closed,
    shifted_closed,
    term_budget,
)

T8 = Tolerance(1e-8)
T10 = Tolerance(1e-10)


def spec(family, s, **kw):
    kw.setdefault("tol", T10)
    return SumSpec(family=family, s=s, **kw)


class TestSumSpecInvariants:
    def test_family_threshold_enforced(self):
        with pytest.raises(DomainError):
            spec(Family.KAPPA, 2.0)
        with pytest.raises(DomainError):
            spec(Family.MOMENT, 4.0, m=2)  # needs s > 4
        with pytest.raises(DomainError):
            spec(Family.GENERAL_AB_ALT, 1.0, a=1.0, b=1.0)

    def test_parameter_ranges(self):
        with pytest.raises(DomainError):
            spec(Family.GENERAL_AB, 3.0, a=0.0, b=1.0)
        with pytest.raises(DomainError):
            spec(Family.GENERAL_AB, 3.0, a=1.0, b=-2.0)
        with pytest.raises(DomainError):
            spec(Family.EXP_WEIGHTED, 3.0, c=-0.1)
        with pytest.raises(DomainError):
            spec(Family.MOMENT, 8.0, m=13)
        with pytest.raises(DomainError):
            spec(Family.KAPPA, float("nan"))

    def test_tolerance_required(self):
        with pytest.raises(DomainError):
            SumSpec(family=Family.KAPPA, s=3.0, tol=1e-8)
        with pytest.raises(DomainError):
            Tolerance(0.0)
        with pytest.raises(DomainError):
            Tolerance(-1e-8)

    def test_threshold_table(self):
        assert convergence_threshold(Family.KAPPA) == 2.0
        assert convergence_threshold(Family.KAPPA_ALT) == 1.0
        assert convergence_threshold(Family.MOMENT, m=2) == 4.0
        assert convergence_threshold(Family.MOMENT_ALT, m=1) == 2.0
        assert convergence_threshold(Family.EVEN_ARG_MOMENT, m=1) == 3.0
        assert convergence_threshold(Family.GENERAL_AB) == 2.0
        assert convergence_threshold(Family.GENERAL_AB_ALT) == 1.0
        assert convergence_threshold(Family.EXP_WEIGHTED, c=0.7) == 1.0


class TestEvalDirectValues:
    def test_alternating_kappa_reference(self):
        r = eval_direct(spec(Family.KAPPA_ALT, 2.0))
        assert math.isclose(r.value, 1.2337005501361697, rel_tol=1e-12)
        assert r.method is Method.DIRECT
        assert r.terms_used >= MIN_EXPLICIT

    def test_matches_closed_forms(self):
        cases = [
            (spec(Family.KAPPA, 4.0), kappa_closed(4.0)),
            (spec(Family.SHIFTED, 3.5, a=2.25), shifted_closed(3.5, 2.25)),
            (spec(Family.MOMENT, 5.0, m=1), moment_closed(5.0, 1)),
            (spec(Family.MOMENT_ALT, 5.0, m=2), moment_alt_closed(5.0, 2)),
            (spec(Family.EVEN_ARG_MOMENT, 4.0, m=1), even_arg_moment_closed(4.0, 1)),
        ]
        for sp, want in cases:
            r = eval_direct(sp)
            assert abs(r.value - want) <= r.tail_bound + 1e-12, sp.family

    def test_matches_integral_route(self):
        cases = [
            (spec(Family.GENERAL_AB, 3.0, a=2.5, b=0.7), (3.0, 2.5, 0.7, 0.0, Sign.PLUS)),
            (spec(Family.GENERAL_AB_ALT, 2.0, a=1.0, b=1.0), (2.0, 1.0, 1.0, 0.0, Sign.MINUS)),
            (
                spec(Family.EXP_WEIGHTED, 3.0, a=0.5, b=1.0, c=0.7, sign=Sign.PLUS),
                (3.0, 0.5, 1.0, 0.7, Sign.PLUS),
            ),
        ]
        for sp, qargs in cases:
            r = eval_direct(sp)
            qv, qe = quad_family_sum(*qargs)
            assert abs(r.value - qv) <= r.tail_bound + qe + 1e-12, sp.family

    def test_tail_bound_within_request(self):
        r = eval_direct(spec(Family.GENERAL_AB, 4.0, a=0.5, b=1.0, tol=T8))
        assert r.tail_bound <= 1e-8


class TestStoppingRules:
    def test_floor_rule_never_stops_earlier(self):
        for fam, kw in [
            (Family.KAPPA, dict(s=4.0)),
            (Family.GENERAL_AB, dict(s=4.0, a=0.5, b=1.0)),
            (Family.GENERAL_AB_ALT, dict(s=4.0, a=1.0, b=1.0)),
        ]:
            early = eval_direct(spec(fam, tol=T8, **kw), stop=StopRule.EARLIEST)
            floor = eval_direct(spec(fam, tol=T8, **kw), stop=StopRule.TERM_FLOOR)
            assert floor.terms_used >= early.terms_used, fam
            assert abs(floor.value - early.value) <= floor.tail_bound + early.tail_bound

    def test_floor_crossing_brackets_ten_tol(self):
        for s, tol in ((4.0, 1e-8), (2.5, 1e-10), (7.0, 1e-6)):
            a_star = floor_crossing_arg(s, tol)
            assert hurwitz_tail_bound(s, 1.2 * a_star) <= 10.0 * tol
            assert hurwitz_tail_bound(s, 0.8 * a_star) >= 10.0 * tol

    def test_budget_exhaustion_raises(self, monkeypatch):
        monkeypatch.setenv("ZS_TERM_BUDGET", "3")
        assert term_budget() == 3
        with pytest.raises(TermBudgetError):
            eval_direct(spec(Family.GENERAL_AB, 2.5, a=0.01, b=1.0, tol=T8))

    def test_budget_env_override_roundtrip(self, monkeypatch):
        monkeypatch.delenv("ZS_TERM_BUDGET", raising=False)
        default = term_budget()
        monkeypatch.setenv("ZS_TERM_BUDGET", "12345")
        assert term_budget() == 12345
        monkeypatch.delenv("ZS_TERM_BUDGET")
        assert term_budget() == default


class TestTailBoundHonesty:
    def test_refined_run_stays_inside_coarse_bound(self):
        cases = [
            spec(Family.KAPPA, 3.0, tol=T8),
            spec(Family.KAPPA_ALT, 1.5, tol=T8),
            spec(Family.MOMENT, 6.5, m=3, tol=T8),
            spec(Family.GENERAL_AB, 4.0, a=0.1, b=1.0, tol=T8),
            spec(Family.EXP_WEIGHTED, 2.0, a=1.0, b=0.5, c=1.0, sign=Sign.MINUS, tol=T8),
        ]
        for sp in cases:
            coarse = eval_direct(sp)
            fine = eval_direct(
                SumSpec(
                    family=sp.family, s=sp.s, m=sp.m, a=sp.a, b=sp.b, c=sp.c,
                    sign=sp.sign, tol=Tolerance(sp.tol.abs_tol / 100.0),
                )
            )
            assert abs(coarse.value - fine.value) <= coarse.tail_bound, sp.family


class TestInnerPowerSums:
    def test_reference_values(self):
        assert math.isclose(inner_power_sum(1, 1.0), 0.9206735942077923, rel_tol=1e-13)
        e = math.exp(-1.0)
        assert math.isclose(
            alternating_inner_power_sum(1, 1.0), e / (1.0 + e) ** 2, rel_tol=1e-13
        )

    def test_m_zero_geometric(self):
        for x in (0.3, 1.0, 2.5):
            e = math.exp(-x)
            assert math.isclose(inner_power_sum(0, x), e / (1.0 - e), rel_tol=1e-13)
            assert math.isclose(
                alternating_inner_power_sum(0, x), e / (1.0 + e), rel_tol=1e-13
            )

    def test_against_series(self):
        # the brute alternating reference carries cancellation noise of order
        # 1 ulp per term magnitude, so allow that much in the comparison
        for m in (0, 1, 2, 5, 8, 12):
            for x in (0.5, 1.0, 3.0):
                terms = [n ** m * math.exp(-n * x) for n in range(1, 400)]
                plain = math.fsum(terms)
                alt = math.fsum(t if n % 2 else -t for n, t in enumerate(terms, 1))
                noise = 1e-13 * plain
                assert math.isclose(inner_power_sum(m, x), plain, rel_tol=1e-12), (m, x)
                assert abs(alternating_inner_power_sum(m, x) - alt) <= noise + 1e-12 * abs(alt), (m, x)

    def test_domain(self):
        with pytest.raises(DomainError):
            inner_power_sum(13, 1.0)
        with pytest.raises(DomainError):
            inner_power_sum(1, 0.0)
        with pytest.raises(DomainError):
            alternating_inner_power_sum(-1, 1.0)
