"""
mz_analysis 단위 테스트 - 설계행렬, MZ 상수 인증, Rayleigh 몫 검증
"""
import numpy as np
import pytest

from src.errors import InputValidationError, MZDeficient
from src.numerics.core_math import BasisSpec
from src.numerics.mz_analysis import (
    build_design,
    design_matrix,
    frame_operator,
    rayleigh_quotient,
    verify_mz,
    weight_sum_bounds,
)
from src.numerics.pointsets import Layer, fibonacci_layer, gauss_product_layer, perturb_layer


class TestDesign:
    @pytest.mark.parametrize("n", [0, 1, 4, 8])
    def test_gauss_layer_is_tight_frame(self, n):
        sys = build_design(gauss_product_layer(n), n)
        assert sys.a_est == pytest.approx(1.0, abs=1e-9)
        assert sys.b_est == pytest.approx(1.0, abs=1e-9)
        assert sys.kappa == pytest.approx(1.0, abs=1e-9)

    def test_design_rows_are_scaled_basis(self):
        layer = fibonacci_layer(2, 2.0)
        u = design_matrix(layer, BasisSpec(n=2))
        assert np.allclose(u[:, 0], np.sqrt(layer.weights))

    def test_lower_degree_on_finer_layer(self):
        sys = build_design(gauss_product_layer(6), 3)
        assert sys.spec.size == 16
        assert sys.kappa == pytest.approx(1.0, abs=1e-9)

    def test_fibonacci_constants_ordered(self):
        sys = build_design(fibonacci_layer(6, 2.0), 6)
        assert 0.0 < sys.a_est <= 1.0 + 1e-9 <= sys.b_est + 2e-9
        assert sys.kappa >= 1.0

    def test_perturbed_layer_stays_well_conditioned(self):
        sys = build_design(perturb_layer(gauss_product_layer(8), 0.2, seed=11), 8)
        assert sys.kappa < 3.0

    def test_degree_above_layer_rejected(self):
        with pytest.raises(InputValidationError):
            build_design(gauss_product_layer(3), 4)

    def test_too_few_points(self):
        layer = fibonacci_layer(3, 0.5)
        with pytest.raises(MZDeficient):
            build_design(layer, 3)

    def test_repeated_points_are_deficient(self):
        base = gauss_product_layer(2)
        pts = np.repeat(base.points[:3], 6, axis=0)
        layer = Layer(n=2, points=pts, weights=np.full(18, 1 / 18))
        with pytest.raises(MZDeficient) as exc:
            build_design(layer, 2)
        assert exc.value.error_code == "MZ_DEFICIENT"


class TestHomogeneity:
    @pytest.mark.parametrize("factor", [0.5, 2.0, 5.0, 10.0])
    def test_weight_scaling_scales_constants(self, factor):
        layer = fibonacci_layer(4, 2.0)
        base = build_design(layer, 4)
        scaled = build_design(layer.scaled(factor), 4)
        assert scaled.a_est == pytest.approx(factor * base.a_est, rel=1e-9)
        assert scaled.b_est == pytest.approx(factor * base.b_est, rel=1e-9)
        assert abs(scaled.kappa - base.kappa) <= 1e-10


class TestVerification:
    def test_quotients_inside_bounds(self):
        sys = build_design(fibonacci_layer(5, 1.5), 5)
        check = verify_mz(sys, trials=300, seed=4)
        assert check.contained
        assert sys.a_est - 1e-9 <= check.min_quotient <= check.max_quotient <= sys.b_est + 1e-9

    def test_verification_is_reproducible(self):
        sys = build_design(fibonacci_layer(4, 2.0), 4)
        assert verify_mz(sys, 50, seed=9) == verify_mz(sys, 50, seed=9)

    def test_constant_polynomial_gives_weight_sum(self):
        sys = build_design(fibonacci_layer(4, 2.0), 4)
        c = np.zeros(sys.spec.size)
        c[0] = 1.0
        total, lower_ok, upper_ok = weight_sum_bounds(sys)
        assert rayleigh_quotient(sys, c) == pytest.approx(total)
        assert lower_ok and upper_ok

    def test_frame_operator_is_gram(self):
        sys = build_design(fibonacci_layer(3, 2.0), 3)
        assert np.allclose(frame_operator(sys), sys.u.T @ sys.u)

    def test_trials_must_be_positive(self):
        sys = build_design(gauss_product_layer(1), 1)
        with pytest.raises(InputValidationError):
            verify_mz(sys, 0, seed=0)
