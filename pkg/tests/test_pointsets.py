"""
pointsets 단위 테스트 - 레이어 생성기, 섭동 재현성, mesh norm / separation
"""
import numpy as np
import pytest

from src.errors import InputValidationError, MZDeficient
from src.numerics.core_math import BasisSpec, basis_matrix
from src.numerics.pointsets import (
    Layer,
    covering_grid,
    fibonacci_layer,
    gauss_product_layer,
    geodesic_distance,
    layer_family,
    layer_geometry,
    mesh_norm,
    min_separation,
    perturb_layer,
)


class TestGaussLayer:
    def test_size_and_weight_sum(self):
        layer = gauss_product_layer(5)
        assert layer.size == 6 * 12
        assert float(np.sum(layer.weights)) == pytest.approx(1.0, abs=1e-14)

    def test_integrates_monomials(self):
        layer = gauss_product_layer(3)
        z = layer.points[:, 2]
        # ∫ x₃² dσ = 1/3, ∫ x₃⁴ dσ = 1/5
        assert float(np.sum(layer.weights * z**2)) == pytest.approx(1.0 / 3.0, abs=1e-14)
        assert float(np.sum(layer.weights * z**4)) == pytest.approx(1.0 / 5.0, abs=1e-14)

    @pytest.mark.parametrize("n", [1, 3, 4])
    def test_integrates_every_harmonic_up_to_2n_plus_1(self, n):
        layer = gauss_product_layer(n)
        moments = layer.weights @ basis_matrix(BasisSpec(n=2 * n + 1), layer.points)
        expected = np.zeros(moments.shape[0])
        expected[0] = 1.0
        assert np.max(np.abs(moments - expected)) <= 1e-12

    def test_points_are_read_only(self):
        layer = gauss_product_layer(2)
        with pytest.raises(ValueError):
            layer.points[0, 0] = 2.0

    def test_negative_degree_rejected(self):
        with pytest.raises(InputValidationError):
            gauss_product_layer(-1)


class TestFibonacciLayer:
    def test_point_count_uses_ceiling(self):
        assert fibonacci_layer(4, 2.0).size == 50
        assert fibonacci_layer(3, 1.5).size == 24

    def test_uniform_weights(self):
        layer = fibonacci_layer(3, 2.0)
        assert np.allclose(layer.weights, 1.0 / layer.size)

    def test_dimension_weights(self):
        layer = fibonacci_layer(3, 2.0, weight_scheme="dim")
        assert np.allclose(layer.weights, 1.0 / 16)

    def test_low_oversampling_warns(self, caplog):
        with caplog.at_level("WARNING", logger="mzsphere"):
            fibonacci_layer(3, 1.1)
        assert "below recommended oversampling" in caplog.text

    def test_unknown_scheme_rejected(self):
        with pytest.raises(InputValidationError):
            fibonacci_layer(3, 2.0, weight_scheme="area")


class TestPerturbation:
    def test_same_seed_reproduces_points(self):
        base = gauss_product_layer(4)
        a = perturb_layer(base, 0.5, seed=7)
        b = perturb_layer(base, 0.5, seed=7)
        assert np.array_equal(a.points, b.points)

    def test_different_seed_moves_differently(self):
        base = gauss_product_layer(4)
        a = perturb_layer(base, 0.5, seed=1)
        b = perturb_layer(base, 0.5, seed=2)
        assert not np.array_equal(a.points, b.points)

    def test_displacement_bounded(self):
        base = gauss_product_layer(6)
        moved = perturb_layer(base, 0.4, seed=3)
        limit = 0.4 / 7 + 1e-12
        for x, y in zip(base.points, moved.points):
            assert geodesic_distance(x, y) <= limit

    def test_weights_kept(self):
        base = gauss_product_layer(3)
        moved = perturb_layer(base, 0.5, seed=0)
        assert np.array_equal(base.weights, moved.weights)
        assert moved.provenance["perturbation"] == {"epsilon": 0.5, "seed": 0}

    def test_zero_epsilon_is_identity(self):
        base = gauss_product_layer(3)
        assert np.array_equal(perturb_layer(base, 0.0, seed=5).points, base.points)


class TestLayerValidation:
    def test_non_positive_weight_rejected(self):
        with pytest.raises(InputValidationError):
            Layer(n=0, points=np.array([[0.0, 0.0, 1.0]]), weights=np.array([0.0]))

    def test_length_mismatch_rejected(self):
        with pytest.raises(InputValidationError):
            Layer(n=0, points=np.array([[0.0, 0.0, 1.0]]), weights=np.array([0.5, 0.5]))

    def test_require_fitting(self):
        layer = fibonacci_layer(2, 1.0)
        layer.require_fitting(2)
        with pytest.raises(MZDeficient):
            layer.require_fitting(3)

    def test_scaled_weights(self):
        layer = gauss_product_layer(2).scaled(3.0)
        assert float(np.sum(layer.weights)) == pytest.approx(3.0)


class TestFamilies:
    def test_known_families(self):
        assert layer_family("gauss")(2).size == 18
        assert layer_family("fibonacci", oversampling=1.5)(3).size == 24
        assert layer_family("perturbed", epsilon=0.2, seed=1)(2).size == 18

    def test_unknown_family(self):
        with pytest.raises(InputValidationError):
            layer_family("hammersley")


class TestGeometry:
    def test_covering_grid_size(self):
        grid = covering_grid(8)
        assert grid.shape == (2 + 7 * 16, 3)
        assert np.allclose(np.linalg.norm(grid, axis=1), 1.0)

    def test_separation_of_octahedron(self):
        pts = np.vstack((np.eye(3), -np.eye(3)))
        layer = Layer(n=1, points=pts, weights=np.full(6, 1 / 6))
        assert min_separation(layer) == pytest.approx(np.pi / 2)

    def test_mesh_norm_shrinks_with_degree(self):
        coarse = mesh_norm(fibonacci_layer(4, 2.0), 32)
        fine = mesh_norm(fibonacci_layer(12, 2.0), 32)
        assert fine < coarse

    def test_inserting_points_never_increases_distances(self, random_points):
        base = fibonacci_layer(6, 2.0)
        for extra in (1, 5, 40):
            pts = np.vstack((base.points, random_points(extra)))
            grown = Layer(n=base.n, points=pts, weights=np.full(pts.shape[0], 1.0 / pts.shape[0]))
            assert mesh_norm(grown, 32) <= mesh_norm(base, 32)
            assert min_separation(grown) <= min_separation(base)

    def test_density_constant_bounded(self):
        # η = n·ρ 가 n 에 따라 커지지 않아야 한다
        etas = [layer_geometry(fibonacci_layer(n, 2.0), 64)["eta"] for n in (4, 8, 16)]
        assert max(etas) < 2.0 * min(etas)

    def test_separation_needs_two_points(self):
        layer = Layer(n=0, points=np.array([[0.0, 0.0, 1.0]]), weights=np.array([1.0]))
        with pytest.raises(InputValidationError):
            min_separation(layer)

    def test_single_point_mesh_norm_is_pi(self):
        layer = Layer(n=0, points=np.array([[0.0, 0.0, 1.0]]), weights=np.array([1.0]))
        assert mesh_norm(layer, 16) == pytest.approx(np.pi)

    def test_antipodal_pair_mesh_norm(self):
        layer = Layer(n=0, points=np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]), weights=np.array([0.5, 0.5]))
        assert mesh_norm(layer, 16) == pytest.approx(np.pi / 2)
