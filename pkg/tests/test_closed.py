"""Closed forms and exact rational coefficient tables."""

import math
from fractions import Fraction

import pytest

from helpers import quad_family_sum
from zetasums import (
    DomainError,
    NoClosedFormError,
    Sign,
    Tolerance,
    ZetaKind,
    combination_split,
    eulerian_polynomial,
    even_arg_moment_closed,
    faulhaber_coeffs,
    hurwitz_zeta,
    kappa_alt_closed,
    kappa_closed,
    kappa_combination,
    moment_alt_closed,
    moment_closed,
    moment_combination,
    riemann_zeta,
    shifted_alt_closed,
    shifted_closed,
)
from zetasums.verification import brute_power_sum

T12 = Tolerance(1e-12)


def frac_list(coeffs):
    return [Fraction(n, d) for n, d in zip(coeffs.numerators, coeffs.denominators)]


class TestKappa:
    def test_value_is_zeta_shift(self):
        assert math.isclose(kappa_closed(4.0), riemann_zeta(3.0, T12), rel_tol=1e-13)
        assert math.isclose(kappa_closed(3.5), riemann_zeta(2.5, T12), rel_tol=1e-13)

    def test_combination_shape(self):
        (term,) = kappa_combination().terms
        assert term.coefficient == 1
        assert term.s_shift == 1
        assert term.kind is ZetaKind.ZETA

    def test_domain(self):
        with pytest.raises(DomainError):
            kappa_closed(2.0)


class TestKappaAlt:
    def test_reference_value(self):
        assert math.isclose(kappa_alt_closed(2.0), 1.2337005501361697, rel_tol=1e-13)

    def test_eta_like_prefactor(self):
        for s in (1.5, 2.0, 4.0, 7.0):
            want = (1.0 - 2.0 ** -s) * riemann_zeta(s, T12)
            assert math.isclose(kappa_alt_closed(s), want, rel_tol=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            kappa_alt_closed(1.0)


class TestShifted:
    def test_reduces_to_kappa_at_a_one(self):
        assert math.isclose(shifted_closed(4.0, 1.0), riemann_zeta(3.0, T12), rel_tol=1e-13)

    def test_half_shift_reference(self):
        want = hurwitz_zeta(3.0, 0.5, T12) + 0.5 * hurwitz_zeta(4.0, 0.5, T12)
        assert math.isclose(shifted_closed(4.0, 0.5), want, rel_tol=1e-13)

    def test_against_integral_route(self):
        qv, qe = quad_family_sum(3.5, 1.0, 2.25, 0.0, Sign.PLUS)
        assert abs(shifted_closed(3.5, 2.25) - qv) <= qe + 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            shifted_closed(2.0, 1.0)
        with pytest.raises(DomainError):
            shifted_closed(4.0, 0.0)


class TestShiftedAlt:
    def test_pi_squared_over_eight(self):
        assert math.isclose(shifted_alt_closed(2.0, 1.0), math.pi ** 2 / 8.0, rel_tol=1e-13)

    def test_half_lattice_references(self):
        want = 2.0 ** -3 * hurwitz_zeta(3.0, 0.4, T12)
        assert math.isclose(shifted_alt_closed(3.0, 0.8), want, rel_tol=1e-13)
        want = 2.0 ** -1.5 * hurwitz_zeta(1.5, 2.0, T12)
        assert math.isclose(shifted_alt_closed(1.5, 4.0), want, rel_tol=1e-13)

    def test_against_integral_route(self):
        qv, qe = quad_family_sum(1.5, 1.0, 4.0, 0.0, Sign.MINUS)
        assert abs(shifted_alt_closed(1.5, 4.0) - qv) <= qe + 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            shifted_alt_closed(1.0, 1.0)


class TestEulerian:
    def test_small_rows(self):
        assert frac_list(eulerian_polynomial(1)) == [1]
        assert frac_list(eulerian_polynomial(2)) == [1, 1]
        assert frac_list(eulerian_polynomial(3)) == [1, 4, 1]
        assert frac_list(eulerian_polynomial(4)) == [1, 11, 11, 1]

    def test_worpitzky_style_formula(self):
        # A(m, k) = sum_j (-1)^j C(m+1, j) (k+1-j)^m, exact integers
        for m in range(1, 13):
            row = frac_list(eulerian_polynomial(m))
            for k, got in enumerate(row):
                want = sum(
                    (-1) ** j * math.comb(m + 1, j) * (k + 1 - j) ** m
                    for j in range(k + 2)
                )
                assert got == want, (m, k)

    def test_symmetry_and_row_sums(self):
        for m in range(1, 13):
            row = frac_list(eulerian_polynomial(m))
            assert row == row[::-1]
            assert sum(row) == math.factorial(m)

    def test_domain(self):
        with pytest.raises(DomainError):
            eulerian_polynomial(0)
        with pytest.raises(DomainError):
            eulerian_polynomial(13)


class TestFaulhaber:
    def test_known_rows(self):
        c1 = faulhaber_coeffs(1)
        assert c1.offset == 1 and frac_list(c1) == [Fraction(1, 2), Fraction(1, 2)]
        c2 = faulhaber_coeffs(2)
        assert c2.offset == 1
        assert frac_list(c2) == [Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)]
        c3 = faulhaber_coeffs(3)
        assert c3.offset == 2
        assert frac_list(c3) == [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]

    def test_exact_against_brute_sums(self):
        for m in range(0, 13):
            coeffs = faulhaber_coeffs(m)
            row = frac_list(coeffs)
            for n in (1, 2, 7, 50):
                poly = sum(
                    c * Fraction(n) ** (coeffs.offset + i) for i, c in enumerate(row)
                )
                assert poly == brute_power_sum(m, n), (m, n)

    def test_domain(self):
        with pytest.raises(DomainError):
            faulhaber_coeffs(-1)
        with pytest.raises(DomainError):
            faulhaber_coeffs(13)


class TestMoment:
    def test_m1_reference(self):
        want = 0.5 * (riemann_zeta(4.0, T12) + riemann_zeta(3.0, T12))
        assert math.isclose(moment_closed(5.0, 1), want, rel_tol=1e-13)

    def test_m3_reference(self):
        want = 0.25 * riemann_zeta(5.0, T12) + 0.5 * riemann_zeta(4.0, T12) \
            + 0.25 * riemann_zeta(3.0, T12)
        assert math.isclose(moment_closed(7.0, 3), want, rel_tol=1e-13)

    def test_coefficients_are_faulhaber(self):
        # power p of the polynomial pairs with the shift-p zeta value;
        # zero coefficients carry no term
        for m in range(1, 7):
            combo = [(t.coefficient, t.s_shift) for t in moment_combination(m).terms]
            fc = faulhaber_coeffs(m)
            want = [
                (c, fc.offset + i)
                for i, c in enumerate(frac_list(fc))
                if c != 0
            ]
            assert combo == want, m

    def test_domain(self):
        with pytest.raises(DomainError):
            moment_closed(4.0, 3)  # needs s > m + 2
        with pytest.raises(DomainError):
            moment_closed(5.0, 13)


class TestMomentAlt:
    def test_m1_reference(self):
        want = 2.0 ** -4 * (
            hurwitz_zeta(3.0, 0.5, T12)
            + 0.5 * hurwitz_zeta(4.0, 0.5, T12)
            - riemann_zeta(3.0, T12)
        )
        assert math.isclose(moment_alt_closed(4.0, 1), want, rel_tol=1e-12)

    def test_m2_reference(self):
        want = 0.5 * (
            (1.0 - 2.0 ** -3) * riemann_zeta(4.0, T12)
            + (1.0 - 2.0 ** -2) * riemann_zeta(3.0, T12)
        )
        assert math.isclose(moment_alt_closed(5.0, 2), want, rel_tol=1e-13)

    def test_no_closed_form_outside_m_one_two(self):
        with pytest.raises(NoClosedFormError):
            moment_alt_closed(6.0, 3)
        with pytest.raises(NoClosedFormError):
            moment_alt_closed(6.0, 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            moment_alt_closed(2.0, 1)  # needs s > m + 1


class TestEvenArgMoment:
    def test_m1_reference(self):
        z3 = riemann_zeta(3.0, T12)
        z2 = riemann_zeta(2.0, T12)
        want = (1.0 / 8.0) * (
            (1.0 + 2.0 ** -3) * z3
            + z2
            - 2.0 ** -3 * (hurwitz_zeta(3.0, 0.5, T12) + 0.5 * hurwitz_zeta(4.0, 0.5, T12))
        )
        assert math.isclose(even_arg_moment_closed(4.0, 1), want, rel_tol=1e-12)

    def test_m2_reference(self):
        z4 = riemann_zeta(4.0, T12)
        z3 = riemann_zeta(3.0, T12)
        z2 = riemann_zeta(2.0, T12)
        want = (1.0 / 24.0) * (
            (3.0 * 2.0 ** -4 - 1.0) * z4 + 6.0 * 2.0 ** -4 * z3 + z2
        )
        assert math.isclose(even_arg_moment_closed(5.0, 2), want, rel_tol=1e-12)

    def test_no_closed_form_outside_m_one_two(self):
        with pytest.raises(NoClosedFormError):
            even_arg_moment_closed(6.0, 3)

    def test_domain(self):
        with pytest.raises(DomainError):
            even_arg_moment_closed(3.0, 1)
        with pytest.raises(DomainError):
            even_arg_moment_closed(4.0, 2)


class TestCombinationEval:
    def test_split_routes_agree(self):
        lhs, rhs = combination_split(5.0, 1)
        assert abs(lhs - rhs) <= 1e-12

    def test_bound_is_honest(self):
        combo = moment_combination(2)
        v1, b1 = combo.evaluate_with_bound(5.0, Tolerance(1e-9))
        v2, _ = combo.evaluate_with_bound(5.0, Tolerance(1e-13))
        assert abs(v1 - v2) <= b1

    def test_unattainable_tolerance_raises(self):
        with pytest.raises(DomainError):
            moment_combination(2).evaluate_with_bound(5.0, Tolerance(1e-30))
