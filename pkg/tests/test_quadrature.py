"""
quadrature 단위 테스트 - 최소제곱 구적 가중치, 정확도 인증, 기준 구적, Hölder 사슬
"""
import numpy as np
import pytest

from src.errors import DimensionMismatch, InputValidationError, InvariantViolation
from src.numerics import quadrature
from src.numerics.approximation import fit
from src.numerics.mz_analysis import build_design
from src.numerics.pointsets import fibonacci_layer, gauss_product_layer, perturb_layer
from src.numerics.quadrature import (
    QuadratureRule,
    certify_rule,
    integrate,
    kernel_route_weights,
    lsq_weights,
    quadrature_error,
    reference_cache,
    reference_integral,
    reference_layer,
)
from src.numerics.sobolev_lab import ZonalTestFunction


class TestWeights:
    def test_exact_on_polynomial_space(self):
        sys = build_design(fibonacci_layer(6, 2.0), 6)
        cert = certify_rule(lsq_weights(sys), sys)
        assert cert["sum_w"] == pytest.approx(1.0, abs=1e-12)
        assert cert["max_harmonic_residual"] < 1e-10
        assert cert["exactness_degree"] == 6

    def test_gauss_layer_recovers_gauss_weights(self):
        layer = gauss_product_layer(5)
        rule = lsq_weights(build_design(layer, 5))
        assert np.allclose(rule.weights, layer.weights, atol=1e-13)

    def test_kernel_route_agrees(self):
        sys = build_design(perturb_layer(gauss_product_layer(5), 0.4, seed=2), 5)
        assert np.allclose(lsq_weights(sys).weights, kernel_route_weights(sys), atol=1e-12)

    def test_integral_equals_integral_of_fit(self, rng):
        sys = build_design(fibonacci_layer(4, 2.0), 4)
        samples = rng.standard_normal(sys.layer.size)
        # ∫ L_n f dσ = 첫 계수
        assert integrate(lsq_weights(sys), samples) == pytest.approx(
            float(fit(sys, samples).coefficients[0]), abs=1e-12
        )

    def test_abs_sum_at_least_sum(self):
        rule = lsq_weights(build_design(fibonacci_layer(5, 1.5), 5))
        assert rule.sum_abs_weights >= abs(rule.sum_weights) - 1e-15

    def test_rule_length_checked(self):
        layer = gauss_product_layer(1)
        with pytest.raises(DimensionMismatch):
            QuadratureRule(layer=layer, weights=np.ones(3), exactness_degree=1)

    def test_integrate_length_checked(self):
        rule = lsq_weights(build_design(gauss_product_layer(1), 1))
        with pytest.raises(DimensionMismatch):
            integrate(rule, np.ones(2))


class TestReference:
    def test_exact_for_polynomials(self):
        # ∫ x₃⁶ dσ = 1/7
        assert reference_integral(lambda x: x[:, 2] ** 6, 6) == pytest.approx(1.0 / 7.0, abs=1e-14)

    def test_exp_integral(self):
        assert reference_integral(lambda x: np.exp(x[:, 2]), 40) == pytest.approx(np.sinh(1.0), abs=1e-14)

    def test_layers_are_cached(self):
        reference_cache.clear()
        first = reference_layer(10)
        assert reference_layer(10) is first
        assert len(reference_cache) == 1

    def test_invalid_degree(self):
        with pytest.raises(InputValidationError):
            reference_layer(0)


class TestHolderChain:
    def test_zonal_function_errors(self, oblique_pole):
        f = ZonalTestFunction(pole=oblique_pole, t=2.5, l_max=32)
        sys = build_design(fibonacci_layer(6, 2.0), 6)
        err_quad, err_l2 = quadrature_error(sys, f, 64)
        assert 0.0 <= err_quad <= err_l2 + 1e-9
        assert err_l2 > 0.0

    def test_generic_function_errors(self):
        sys = build_design(fibonacci_layer(5, 2.0), 5)
        err_quad, err_l2 = quadrature_error(sys, lambda x: np.exp(x[:, 0]), 60)
        assert err_quad <= err_l2 + 1e-9
        assert err_l2 < 1e-3

    def test_reference_degree_must_cover_squares(self):
        sys = build_design(gauss_product_layer(4), 4)
        with pytest.raises(InputValidationError):
            quadrature_error(sys, lambda x: x[:, 2], 7)

    def test_corrupted_weights_raise(self, monkeypatch):
        original = quadrature.lsq_weights

        def inflated(sys):
            rule = original(sys)
            return QuadratureRule(
                layer=rule.layer, weights=rule.weights * 1.5, exactness_degree=rule.exactness_degree
            )

        monkeypatch.setattr(quadrature, "lsq_weights", inflated)
        sys = build_design(fibonacci_layer(5, 2.0), 5)
        with pytest.raises(InvariantViolation) as exc:
            quadrature_error(sys, lambda x: np.exp(x[:, 2]), 60)
        assert exc.value.error_code == "INVARIANT_VIOLATION"
        assert exc.value.context["err_quad"] > exc.value.context["err_l2"]
