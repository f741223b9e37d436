"""
linalg 단위 테스트 - QR 최소제곱, Gram 역적용, 극단 고유값
"""
import numpy as np
import pytest
import scipy.linalg as sla

from src.errors import InputValidationError, RankDeficient
from src.numerics import linalg
from src.numerics.core_math import BasisSpec
from src.numerics.linalg import (
    factorize,
    gram_apply_inverse,
    lsq_solve,
    normal_equations_solve,
    sym_eig_extremes,
)
from src.numerics.mz_analysis import design_matrix
from src.numerics.pointsets import fibonacci_layer


class TestFactorize:
    def test_reconstructs_matrix(self, rng):
        u = rng.standard_normal((30, 8))
        fac = factorize(u)
        assert np.allclose(fac.reconstruct(), u, atol=1e-13)
        assert fac.shape == (30, 8)
        assert not fac.rank_deficient

    def test_duplicate_column_is_rank_deficient(self, rng):
        u = rng.standard_normal((20, 5))
        u[:, 3] = u[:, 1]
        with pytest.raises(RankDeficient) as exc:
            factorize(u)
        assert exc.value.index == 3

    def test_non_strict_records_index(self, rng):
        u = rng.standard_normal((20, 5))
        u[:, 4] = 0.0
        fac = factorize(u, strict=False)
        assert fac.deficient_index == 4
        with pytest.raises(RankDeficient):
            lsq_solve(fac, np.ones(20))

    def test_wide_matrix_rejected(self, rng):
        with pytest.raises(RankDeficient):
            factorize(rng.standard_normal((3, 5)))


class TestSolves:
    def test_lsq_matches_normal_equations(self, rng):
        u = rng.standard_normal((40, 12))
        b = rng.standard_normal(40)
        z = lsq_solve(factorize(u), b)
        assert np.allclose(z, normal_equations_solve(u, b), atol=1e-10)

    def test_gram_inverse(self, rng):
        u = rng.standard_normal((25, 6))
        v = rng.standard_normal(6)
        w = gram_apply_inverse(factorize(u), v)
        assert np.allclose((u.T @ u) @ w, v, atol=1e-10)

    def test_rhs_length_checked(self, rng):
        fac = factorize(rng.standard_normal((10, 3)))
        with pytest.raises(InputValidationError):
            lsq_solve(fac, np.ones(9))


class TestEigenvalues:
    def test_dense_path(self):
        r = np.diag([0.5, 2.0, 1.0])
        assert sym_eig_extremes(r) == pytest.approx((0.5, 2.0))

    @pytest.fixture(scope="class")
    def fibonacci_gram(self):
        # d_24 = 625 > DENSE_EIG_LIMIT 이므로 반복 경로를 탄다
        layer = fibonacci_layer(24, 2.0)
        u = design_matrix(layer, BasisSpec(n=24))
        gram = u.T @ u
        return 0.5 * (gram + gram.T)

    def test_iterative_path_matches_dense(self, fibonacci_gram):
        assert fibonacci_gram.shape[0] > linalg.DENSE_EIG_LIMIT
        expected = sla.eigvalsh(fibonacci_gram)
        lo, hi = sym_eig_extremes(fibonacci_gram, tol=1e-9)
        assert abs(lo - expected[0]) <= 1e-9 * expected[0]
        assert abs(hi - expected[-1]) <= 1e-9 * expected[-1]

    def test_rayleigh_quotients_inside_extremes(self, fibonacci_gram, rng):
        lo, hi = sym_eig_extremes(fibonacci_gram)
        vectors = rng.standard_normal((100, fibonacci_gram.shape[0]))
        quotients = np.einsum("ij,jk,ik->i", vectors, fibonacci_gram, vectors) / np.einsum("ij,ij->i", vectors, vectors)
        assert np.all(quotients >= lo * (1.0 - 1e-9))
        assert np.all(quotients <= hi * (1.0 + 1e-9))

    def test_iterative_path_on_small_matrix(self, rng, monkeypatch):
        g = rng.standard_normal((60, 20))
        r = g.T @ g
        expected = np.linalg.eigvalsh(r)
        monkeypatch.setattr(linalg, "DENSE_EIG_LIMIT", 4)
        lo, hi = sym_eig_extremes(r, tol=1e-12)
        assert hi == pytest.approx(expected[-1], rel=1e-10)
        assert lo == pytest.approx(expected[0], rel=1e-10)

    def test_asymmetric_rejected(self):
        with pytest.raises(InputValidationError):
            sym_eig_extremes(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_empty_rejected(self):
        with pytest.raises(InputValidationError):
            sym_eig_extremes(np.zeros((0, 0)))
