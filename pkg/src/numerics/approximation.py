"""
가중 최소제곱 연산자 L_n, 이산 재생핵 D_n, hyperinterpolation, Christoffel 함수,
Lebesgue 상수 추정기
"""
from dataclasses import dataclass
from math import ceil, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

import logging

import numpy as np
from scipy.linalg import solve_triangular

from ..errors import DimensionMismatch, InputValidationError
from ..utils.parallel import ordered_map
from .core_math import BasisSpec, basis_eval, basis_matrix, kernel_E
from .linalg import gram_apply_inverse, lsq_solve
from .mz_analysis import DesignSystem
from .pointsets import Layer, covering_grid

logger = logging.getLogger("mzsphere")

GRID_NODES_PER_DIM = 40
GRID_CHUNK = 2048


@dataclass(frozen=True, eq=False)
class Approximant:
    """차수 n 구면 다항식: 정규직교 조화 기저 계수 a"""

    spec: BasisSpec
    coefficients: np.ndarray

    def __post_init__(self):
        a = np.array(self.coefficients, dtype=float).reshape(-1)
        if a.shape[0] != self.spec.size:
            raise DimensionMismatch(
                "coefficient count does not match dim Π_n",
                expected=self.spec.size,
                got=int(a.shape[0]),
            )
        a.setflags(write=False)
        object.__setattr__(self, "coefficients", a)

    @property
    def n(self) -> int:
        return self.spec.n

    def norm(self) -> float:
        """‖p‖₂ = |a| (Parseval)"""
        return float(np.linalg.norm(self.coefficients))

    def values(self, points: np.ndarray) -> np.ndarray:
        """여러 점에서의 p(x)"""
        return basis_matrix(self.spec, points) @ self.coefficients


def _check_samples(samples: np.ndarray, expected: int) -> np.ndarray:
    y = np.asarray(samples, dtype=float).reshape(-1)
    if y.shape[0] != expected:
        raise DimensionMismatch(
            "sample vector length does not match the layer",
            expected=expected,
            got=int(y.shape[0]),
        )
    return y


def fit(sys: DesignSystem, samples: np.ndarray) -> Approximant:
    """a = argmin Σ τ_k (f(x_k) - p(x_k))² = R⁻¹Uᵀ(τ^{1/2} ⊙ f)"""
    y = _check_samples(samples, sys.layer.size)
    coeffs = lsq_solve(sys.factorization, sys.sqrt_tau * y)
    return Approximant(spec=sys.spec, coefficients=coeffs)


def evaluate(p: Approximant, x: np.ndarray) -> float:
    return float(basis_eval(p.spec, x) @ p.coefficients)


def hyperinterpolate(layer: Layer, n: int, samples: np.ndarray) -> Approximant:
    """b_{ℓ,m} = Σ τ_k f(x_k) Y_{ℓ,m}(x_k) (이산 Fourier 계수)"""
    y = _check_samples(samples, layer.size)
    spec = BasisSpec(n=n, d=layer.d)
    phi = basis_matrix(spec, layer.points)
    return Approximant(spec=spec, coefficients=phi.T @ (layer.weights * y))


# ---------------------------------------------------------------------------
# 이산 재생핵
# ---------------------------------------------------------------------------

def discrete_kernel(sys: DesignSystem, x: np.ndarray, y: np.ndarray) -> float:
    """D_n(x, y) = Φ(x)ᵀ R⁻¹ Φ(y)"""
    phi_x = basis_eval(sys.spec, x)
    phi_y = basis_eval(sys.spec, y)
    return float(phi_x @ gram_apply_inverse(sys.factorization, phi_y))


def kernel_matrix(sys: DesignSystem, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """(i, j) 성분 D_n(xs_i, ys_j)"""
    left = basis_matrix(sys.spec, xs)
    right = gram_apply_inverse(sys.factorization, basis_matrix(sys.spec, ys).T)
    return left @ right


def christoffel(sys: DesignSystem, x: np.ndarray) -> Tuple[float, float]:
    """(Φ_n(x), Ψ_n(x)) = (1/E_n(x,x), 1/D_n(x,x))"""
    e_nn = kernel_E(sys.spec.d, sys.n, 1.0)
    return 1.0 / e_nn, 1.0 / discrete_kernel(sys, x, x)


def dual_frame(sys: DesignSystem) -> np.ndarray:
    """l_n × d_n, 행 k = τ_k R⁻¹Φ(x_k) (τ_k^{1/2} e_{n,k} 의 계수)"""
    phi = sys.basis_at_nodes()
    return sys.layer.weights[:, None] * gram_apply_inverse(sys.factorization, phi.T).T


def discrete_orthonormal_basis(sys: DesignSystem) -> np.ndarray:
    """⟨·,·⟩_(n) 에 대한 Gram–Schmidt 기저의 계수행렬 (열 i = φ_i).

    U = QT 이면 C = T⁻¹ 가 CᵀRC = I 를 만족한다. 대각 부호를 양수로 맞춰
    기저 순서대로의 Gram–Schmidt 결과와 일치시킨다.
    """
    t = sys.factorization.t
    signs = np.where(np.diag(t) < 0, -1.0, 1.0)
    c = np.linalg.solve(t, np.eye(t.shape[0]))
    return c * signs[None, :]


# ---------------------------------------------------------------------------
# Lebesgue 함수 / 상수
# ---------------------------------------------------------------------------

def default_grid_resolution(d_n: int) -> int:
    """covering_grid 노드 수 2 + 2r(r-1) ≥ 40·d_n 이 되는 최소 근방 r"""
    r = int(ceil(sqrt(GRID_NODES_PER_DIM * d_n / 2.0))) + 1
    while 2 + 2 * r * (r - 1) < GRID_NODES_PER_DIM * d_n:
        r += 1
    return r


def _weighted_kernel_columns(sys: DesignSystem) -> np.ndarray:
    # d_n × l_n, 열 k = τ_k R⁻¹Φ(x_k)
    return dual_frame(sys).T


def lebesgue_function(sys: DesignSystem, points: np.ndarray, threads: Optional[int] = None) -> np.ndarray:
    """x ↦ Σ_k τ_k |D_n(x_k, x)|"""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    w = _weighted_kernel_columns(sys)
    chunks = [pts[i:i + GRID_CHUNK] for i in range(0, pts.shape[0], GRID_CHUNK)]

    def row_sums(chunk: np.ndarray) -> np.ndarray:
        return np.abs(basis_matrix(sys.spec, chunk) @ w).sum(axis=1)

    parts = ordered_map(row_sums, chunks, threads=threads)
    return np.concatenate(parts) if parts else np.empty(0)


def lebesgue_constant(sys: DesignSystem, grid_resolution: Optional[int] = None) -> float:
    """격자 위 최대값. ‖L_n‖ 의 하한 추정이며 격자를 세분하면 아래에서 수렴한다."""
    r = default_grid_resolution(sys.spec.size) if grid_resolution is None else grid_resolution
    grid = covering_grid(r)
    values = lebesgue_function(sys, grid)
    value = float(np.max(values))
    logger.info(
        "lebesgue estimate | n=%d grid_resolution=%d nodes=%d value=%.12g",
        sys.n, r, grid.shape[0], value,
    )
    return value


def refinement_resolutions(base: int, count: int) -> List[int]:
    """base, 5/4·base, 3/2·base, ... (count 개)"""
    if base < 1 or count < 1:
        raise InputValidationError(f"need base >= 1 and count >= 1, got base={base}, count={count}")
    return [base + (k * base + 3) // 4 for k in range(count)]


def lebesgue_refinement(sys: DesignSystem, resolutions: Sequence[int]) -> List[Dict[str, float]]:
    """해상도별 추정값과 그때까지의 누적 최대값"""
    rows: List[Dict[str, float]] = []
    best = 0.0
    for r in resolutions:
        value = lebesgue_constant(sys, r)
        best = max(best, value)
        rows.append({
            "grid_resolution": int(r),
            "nodes": int(covering_grid(r).shape[0]),
            "value": value,
            "best": best,
        })
    return rows


def christoffel_upper_estimate(sys: DesignSystem, grid_resolution: Optional[int] = None) -> float:
    """B^{1/2}·max_x D_n(x,x)^{1/2} (Cauchy–Schwarz 상한)"""
    r = default_grid_resolution(sys.spec.size) if grid_resolution is None else grid_resolution
    grid = covering_grid(r)
    t = sys.factorization.t
    best = 0.0
    for i in range(0, grid.shape[0], GRID_CHUNK):
        phi = basis_matrix(sys.spec, grid[i:i + GRID_CHUNK])
        # D_n(x,x) = |T⁻ᵀΦ(x)|²
        z = solve_triangular(t, phi.T, trans="T", lower=False)
        best = max(best, float(np.max(np.einsum("ij,ij->j", z, z))))
    return sqrt(sys.b_est) * sqrt(best)
