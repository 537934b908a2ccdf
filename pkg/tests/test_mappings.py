import math

import numpy as np
import pytest

from defcalc import (
    DegenerateInput,
    DomainError,
    HausdorffParams,
    MappingResult,
    RealFunction,
    SeriesExpansion,
    conformable_hausdorff_check,
    expand_hausdorff_prefactor,
    first_order_agreement,
    gamma,
    hausdorff_derivative,
    kappa_expansion,
    q_derivative,
    q_from_zeta,
    zeta_from_q,
    yang_hausdorff_check,
)

CORPUS = [RealFunction.from_expression(src) for src in ("x", "x^2", "sin(x)", "exp(x)")]


class TestExpandHausdorffPrefactor:
    def test_zeta_one_truncates_to_unity(self):
        expansion = expand_hausdorff_prefactor(HausdorffParams(1.0, 1.0), 6)
        assert expansion.coefficients[0] == 1.0
        assert all(c == 0.0 for c in expansion.coefficients[1:])

    def test_leading_coefficients(self):
        expansion = expand_hausdorff_prefactor(HausdorffParams(0.5, 1.0), 4)
        assert expansion.coefficients[0] == 1.0
        assert expansion.coefficients[1] == pytest.approx(0.5, rel=1e-15)
        assert expansion.coefficients[2] == pytest.approx(-0.125, rel=1e-15)

    def test_partial_sums_converge_to_closed_form(self):
        hp = HausdorffParams(0.5, 1.0)
        value = expand_hausdorff_prefactor(hp, 20).evaluate(0.5)
        assert value == pytest.approx(1.5**0.5, abs=1e-6)

    def test_thirty_terms_at_half_radius(self):
        for zeta in (0.3, 0.5, 0.8):
            hp = HausdorffParams(zeta, 1.0)
            closed = 1.5 ** (1.0 - zeta)
            value = expand_hausdorff_prefactor(hp, 30).evaluate(0.5)
            assert abs(value - closed) <= 1e-8

    def test_order_validation(self):
        with pytest.raises(ValueError):
            expand_hausdorff_prefactor(HausdorffParams(0.5, 1.0), 0)


class TestMapping:
    def test_limit_zeta_one(self):
        for l0 in (0.5, 1.0, 3.0):
            assert q_from_zeta(HausdorffParams(1.0, l0)).q == 1.0

    def test_limit_q_zero(self):
        for l0 in (0.3, 1.0, 2.0):
            assert zeta_from_q(0.0, l0).zeta == 1.0 - l0

    def test_limit_large_cutoff(self):
        assert abs(q_from_zeta(HausdorffParams(0.5, 1e12)).q - 1.0) <= 1e-12

    def test_round_trip(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            zeta = float(rng.uniform(-1.0, 1.5))
            l0 = float(rng.uniform(0.1, 10.0))
            q = q_from_zeta(HausdorffParams(zeta, l0)).q
            assert abs(zeta_from_q(q, l0).zeta - zeta) <= 1e-15
            assert abs(q_from_zeta(HausdorffParams(zeta_from_q(q, l0).zeta, l0)).q - q) <= 1e-15

    def test_algebraic_inverse_example(self):
        result = zeta_from_q(0.63, 1.7)
        assert q_from_zeta(HausdorffParams(result.zeta, 1.7)).q == pytest.approx(
            0.63, abs=1e-15
        )

    def test_residual_bound_field(self):
        result = q_from_zeta(HausdorffParams(0.5, 1.0))
        assert result.first_order_residual_bound == pytest.approx(0.125, rel=1e-15)

    def test_result_invariant_enforced(self):
        # 1 - q = 0.5 but (1 - zeta)/l0 = 0.1
        with pytest.raises(ValueError):
            MappingResult(q=0.5, zeta=0.9, l0=1.0, first_order_residual_bound=0.0)

    def test_l0_validation(self):
        with pytest.raises(ValueError):
            zeta_from_q(0.5, 0.0)


class TestFirstOrderAgreement:
    def test_zero_point(self):
        agreement = first_order_agreement(HausdorffParams(0.5, 1.0), 0.0)
        assert agreement.residual == 0.0

    def test_second_order_coefficient_dominates(self):
        agreement = first_order_agreement(HausdorffParams(0.5, 1.0), 1e-3)
        c2x2 = 0.125e-6
        assert abs(agreement.residual - c2x2) <= 0.1 * c2x2

    def test_zeta_one_is_exact(self):
        for x in (0.0, 0.3, 0.9):
            assert first_order_agreement(HausdorffParams(1.0, 1.0), x).residual == 0.0

    def test_series_regime_required(self):
        with pytest.raises(DomainError):
            first_order_agreement(HausdorffParams(0.5, 1.0), 1.0)

    def test_dominance_inside_hundredth_radius(self):
        for zeta in (0.3, 0.5, 0.8):
            for l0 in (0.5, 1.0, 2.0):
                hp = HausdorffParams(zeta, l0)
                c2 = abs((1.0 - zeta) * zeta) / (2.0 * l0 * l0)
                for x in np.linspace(1e-5 * l0, 0.01 * l0, 7):
                    x = float(x)
                    residual = first_order_agreement(hp, x).residual
                    assert residual <= 1.1 * c2 * x * x


class TestOperatorLevelFirstOrder:
    def test_q_derivative_is_first_order_hausdorff(self):
        for zeta, l0 in ((0.4, 1.0), (0.9, 2.0)):
            hp = HausdorffParams(zeta, l0)
            q = q_from_zeta(hp).q
            c2 = abs((1.0 - zeta) * zeta) / (2.0 * l0 * l0)
            for f in CORPUS:
                for x in np.linspace(0.0, 0.01 * l0, 11):
                    x = float(x)
                    lhs = q_derivative(f, x, q)
                    rhs = hausdorff_derivative(f, x, hp)
                    bound = 1.1 * c2 * x * x * abs(f.derivative(x))
                    assert abs(lhs - rhs) <= bound + 1e-15


class TestKappaExpansion:
    def test_unit_leading_coefficient(self):
        for kappa in (0.2, 1.0):
            assert kappa_expansion(kappa, 4).coefficients[0] == 1.0

    def test_known_coefficients(self):
        expansion = kappa_expansion(1.0, 4)
        assert expansion.coefficients[2] == pytest.approx(0.5, rel=1e-15)
        assert expansion.coefficients[4] == pytest.approx(-0.125, rel=1e-15)

    def test_odd_coefficients_exactly_zero(self):
        expansion = kappa_expansion(0.7, 11)
        assert all(expansion.coefficients[k] == 0.0 for k in range(1, 12, 2))

    def test_partial_sums_match_prefactor(self):
        kappa = 0.5
        value = kappa_expansion(kappa, 40).evaluate(0.8)
        assert value == pytest.approx(math.sqrt(1.0 + kappa**2 * 0.8**2), abs=1e-9)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            kappa_expansion(0.5, 1)


class TestConformableHausdorffCheck:
    def test_classical_alpha(self):
        result = conformable_hausdorff_check(1.0, 1.0, "exp(x)", 0.7)
        assert result.rel_diff <= 1e-10

    def test_linear_function_hand_value(self):
        result = conformable_hausdorff_check(0.5, 1.0, "x", 3.0)
        assert result.lhs == pytest.approx(2.0, rel=1e-9)
        assert result.rhs == pytest.approx(2.0, rel=1e-14)

    def test_exponential(self):
        result = conformable_hausdorff_check(0.7, 2.0, "exp(x)", 1.0)
        assert result.rel_diff <= 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            conformable_hausdorff_check(0.5, 1.0, "x", -1.5)


class TestYangHausdorffCheck:
    def test_alpha_one(self):
        assert yang_hausdorff_check(1.0, HausdorffParams(1.0, 1.0), "exp(x)", 0.5) == (
            pytest.approx(1.0, rel=1e-12)
        )

    def test_half(self):
        ratio = yang_hausdorff_check(0.5, HausdorffParams(0.5, 1.0), "x", 1.0)
        assert ratio == pytest.approx(gamma(1.5), rel=1e-12)

    def test_ratio_independent_of_function_and_point(self):
        ratios = [
            yang_hausdorff_check(0.5, HausdorffParams(0.5, 1.0), f, x)
            for f in (CORPUS[0], CORPUS[2], CORPUS[3])
            for x in np.linspace(0.1, 1.4, 11)
        ]
        assert max(ratios) - min(ratios) <= 1e-10

    def test_degenerate_slope(self):
        with pytest.raises(DegenerateInput):
            yang_hausdorff_check(0.5, HausdorffParams(0.5, 1.0), "x^2", 0.0)


def test_series_expansion_validation():
    with pytest.raises(ValueError):
        SeriesExpansion((1.0, 2.0), 0.0, 2)
    with pytest.raises(ValueError):
        SeriesExpansion((1.0, math.inf), 0.0, 1)
    series = SeriesExpansion((1.0, 2.0, 3.0), 1.0, 2)
    assert series.evaluate(2.0) == 6.0
