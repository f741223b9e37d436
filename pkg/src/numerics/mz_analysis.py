"""
설계행렬 U_n, Gram 행렬 R_n, 레이어별 MZ 상수 A, B, κ 인증
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import logging

import numpy as np

from ..config.settings import get_settings
from ..errors import InputValidationError, MZDeficient, RankDeficient
from .core_math import BasisSpec, basis_matrix
from .linalg import TallFactorization, factorize, sym_eig_extremes
from .pointsets import Layer

logger = logging.getLogger("mzsphere")


@dataclass(frozen=True, eq=False)
class DesignSystem:
    """(U_n)_{kl} = τ_k^{1/2} Y_l(x_k) 와 그 인수분해, 스펙트럼 상수"""

    spec: BasisSpec
    layer: Layer
    u: np.ndarray
    factorization: TallFactorization
    gram: np.ndarray
    a_est: float
    b_est: float
    kappa: float

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def sqrt_tau(self) -> np.ndarray:
        return np.sqrt(self.layer.weights)

    def basis_at_nodes(self) -> np.ndarray:
        """Φ(x_k) 행렬 = diag(τ^{-1/2})·U"""
        return self.u / self.sqrt_tau[:, None]


@dataclass(frozen=True)
class MZVerification:
    trials: int
    min_quotient: float
    max_quotient: float
    contained: bool


def design_matrix(layer: Layer, spec: BasisSpec) -> np.ndarray:
    """행 k = τ_k^{1/2} Φ(x_k)"""
    return np.sqrt(layer.weights)[:, None] * basis_matrix(spec, layer.points)


def build_design(
    layer: Layer,
    n: int,
    rank_tol: Optional[float] = None,
    eig_tol: Optional[float] = None,
) -> DesignSystem:
    """U 조립 → QR → R = UᵀU 의 극단 고유값으로 (A, B, κ) 계산.

    하한 MZ 부등식이 깨지면(랭크 결손 또는 A ≤ rank_tol·B) MZDeficient.
    """
    settings = get_settings()
    rank_tol = settings.rank_tol if rank_tol is None else rank_tol
    eig_tol = settings.eig_tol if eig_tol is None else eig_tol
    if n < 0:
        raise InputValidationError(f"degree must be >= 0, got {n}")
    if n > layer.n:
        raise InputValidationError(
            f"fitting degree {n} exceeds the layer degree {layer.n}",
            recovery_guide="레이어를 n 이상 차수로 생성하세요.",
        )
    spec = BasisSpec(n=n, d=layer.d)
    layer.require_fitting(n)
    u = design_matrix(layer, spec)
    try:
        fac = factorize(u, rank_tol=rank_tol)
    except RankDeficient as e:
        raise MZDeficient(
            "lower MZ bound fails: design matrix is rank deficient",
            index=e.index,
            l_n=layer.size,
            d_n=spec.size,
        ) from e
    gram = u.T @ u
    gram = 0.5 * (gram + gram.T)
    a_est, b_est = sym_eig_extremes(gram, tol=eig_tol)
    if a_est <= rank_tol * b_est:
        raise MZDeficient(
            "lower MZ bound fails: smallest Gram eigenvalue collapsed",
            A=a_est,
            B=b_est,
        )
    kappa = max(1.0, b_est / a_est)
    logger.info(
        "design built | n=%d l_n=%d d_n=%d A=%.6g B=%.6g kappa=%.6g",
        n, layer.size, spec.size, a_est, b_est, kappa,
    )
    return DesignSystem(
        spec=spec,
        layer=layer,
        u=u,
        factorization=fac,
        gram=gram,
        a_est=a_est,
        b_est=b_est,
        kappa=kappa,
    )


def frame_operator(sys: DesignSystem) -> np.ndarray:
    """T_n p = Σ τ_k p(x_k) E_n(·, x_k) 의 계수공간 행렬 (= R)"""
    return sys.gram


def rayleigh_quotient(sys: DesignSystem, c: np.ndarray) -> float:
    """Σ τ_k p(x_k)² / ‖p‖₂² = |Uc|²/|c|²"""
    c = np.asarray(c, dtype=float)
    uc = sys.u @ c
    return float(uc @ uc) / float(c @ c)


def verify_mz(sys: DesignSystem, trials: int, seed: int, tol: float = 1e-9) -> MZVerification:
    """무작위 단위 계수벡터의 이산 Rayleigh 몫이 [A, B] 안에 드는지 확인."""
    if trials < 1:
        raise InputValidationError(f"trials must be >= 1, got {trials}")
    rng = np.random.Generator(np.random.Philox(key=int(seed) % 2**128))
    coeffs = rng.standard_normal((trials, sys.spec.size))
    coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
    images = coeffs @ sys.u.T
    quotients = np.einsum("ij,ij->i", images, images)
    slack = tol * max(1.0, sys.b_est)
    lo, hi = float(quotients.min()), float(quotients.max())
    contained = bool(lo >= sys.a_est - slack and hi <= sys.b_est + slack)
    if not contained:
        logger.warning(
            "rayleigh quotient escaped [A, B] | min=%.12g max=%.12g A=%.12g B=%.12g",
            lo, hi, sys.a_est, sys.b_est,
        )
    return MZVerification(trials=trials, min_quotient=lo, max_quotient=hi, contained=contained)


def weight_sum_bounds(sys: DesignSystem, tol: float = 1e-9) -> Tuple[float, bool, bool]:
    """p = 1 을 대입한 A ≤ Στ ≤ B"""
    total = float(np.sum(sys.layer.weights))
    slack = tol * max(1.0, sys.b_est)
    return total, bool(sys.a_est <= total + slack), bool(total <= sys.b_est + slack)
