"""
밀집 선형대수 커널
Householder QR 기반 최소제곱, Gram 역행렬 적용, 대칭 극단 고유값
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import logging

import numpy as np
import scipy.linalg as sla
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, LinearOperator, eigsh

from ..errors import InputValidationError, NonConvergence, RankDeficient

logger = logging.getLogger("mzsphere")

DEFAULT_RANK_TOL = 1e-10
DEFAULT_EIG_TOL = 1e-9
DENSE_EIG_LIMIT = 512
MAX_EIG_ITERATIONS = 20_000
LANCZOS_BASIS = 40
RITZ_TOL_FACTOR = 1e-2
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class TallFactorization:
    """U = Q·T (Q: l×m 정규직교 열, T: m×m 상삼각)"""

    q: np.ndarray
    t: np.ndarray
    rank_tol: float
    deficient_index: Optional[int] = None

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.q.shape[0], self.t.shape[1])

    @property
    def rank_deficient(self) -> bool:
        return self.deficient_index is not None

    def reconstruct(self) -> np.ndarray:
        return self.q @ self.t

    def require_full_rank(self) -> None:
        if self.deficient_index is not None:
            raise RankDeficient(
                "factorization is rank deficient",
                index=self.deficient_index,
                rank_tol=self.rank_tol,
            )


def factorize(u: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL, strict: bool = True) -> TallFactorization:
    """연속 Householder 반사로 U = QT 분해.

    |T_jj| < rank_tol·max|T_ii| 인 첫 j 를 랭크 결손 위치로 기록한다.
    strict=True 이면 즉시 RankDeficient 를 던진다.
    """
    mat = np.asarray(u, dtype=float)
    if mat.ndim != 2:
        raise InputValidationError(f"expected a matrix, got shape {mat.shape}")
    rows, cols = mat.shape
    if rows < cols:
        raise RankDeficient(
            f"{rows}x{cols} system cannot have full column rank",
            index=rows,
        )
    q, t = sla.qr(mat, mode="economic")
    diag = np.abs(np.diag(t))
    scale = diag.max() if diag.size else 0.0
    bad = np.flatnonzero(diag <= rank_tol * scale) if scale > 0 else np.arange(diag.size)
    index = int(bad[0]) if bad.size else None
    logger.debug(
        "qr factorization | shape=%dx%d min_diag=%.3e max_diag=%.3e",
        rows, cols, diag.min() if diag.size else 0.0, scale,
    )
    fac = TallFactorization(q=q, t=t, rank_tol=rank_tol, deficient_index=index)
    if strict:
        fac.require_full_rank()
    return fac


def lsq_solve(fac: TallFactorization, b: np.ndarray) -> np.ndarray:
    """argmin_z |Uz - b|₂ = T⁻¹Qᵀb (= R⁻¹Uᵀb, R = UᵀU)"""
    fac.require_full_rank()
    rhs = np.asarray(b, dtype=float)
    if rhs.shape[0] != fac.q.shape[0]:
        raise InputValidationError(
            "right-hand side length does not match the factorization",
            expected=int(fac.q.shape[0]),
            got=int(rhs.shape[0]),
        )
    return sla.solve_triangular(fac.t, fac.q.T @ rhs, lower=False)


def gram_apply_inverse(fac: TallFactorization, v: np.ndarray) -> np.ndarray:
    """R⁻¹v = T⁻¹T⁻ᵀv"""
    fac.require_full_rank()
    vec = np.asarray(v, dtype=float)
    w = sla.solve_triangular(fac.t, vec, trans="T", lower=False)
    return sla.solve_triangular(fac.t, w, lower=False)


def normal_equations_solve(u: np.ndarray, b: np.ndarray) -> np.ndarray:
    """UᵀU z = Uᵀb 를 Cholesky로 직접 푼다 (QR 경로와 독립인 교차검증용)."""
    mat = np.asarray(u, dtype=float)
    gram = mat.T @ mat
    return sla.cho_solve(sla.cho_factor(gram), mat.T @ np.asarray(b, dtype=float))


# ---------------------------------------------------------------------------
# 극단 고유값
# ---------------------------------------------------------------------------

def _start_vectors(m: int):
    yield np.full(m, 1.0 / np.sqrt(m))
    ramp = np.cos(np.arange(1, m + 1, dtype=float) * 0.7548776662466927)
    yield ramp / np.linalg.norm(ramp)


def _largest(op, m: int, tol: float, label: str) -> float:
    """op 의 최대 고유값. Krylov(Lanczos) 가속 거듭제곱, Ritz 잔차 ≤ tol·|μ| 에서 멈춘다."""
    last: Optional[Exception] = None
    for v0 in _start_vectors(m):
        try:
            values = eigsh(
                op,
                k=1,
                which="LA",
                v0=v0,
                ncv=min(m, LANCZOS_BASIS),
                tol=tol * RITZ_TOL_FACTOR,
                maxiter=MAX_EIG_ITERATIONS,
                return_eigenvectors=False,
            )
        except (ArpackNoConvergence, ArpackError) as e:
            logger.debug("%s failed from start vector; trying fallback | reason=%s", label, e)
            last = e
            continue
        logger.debug("%s converged | m=%d value=%.17g", label, m, values[0])
        return float(values[0])
    raise NonConvergence(
        f"{label} did not converge",
        iterations=MAX_EIG_ITERATIONS,
        tol=tol,
        reason=str(last),
    )


def sym_eig_extremes(r: np.ndarray, tol: float = DEFAULT_EIG_TOL) -> Tuple[float, float]:
    """대칭 행렬의 (λ_min, λ_max).

    m ≤ 512 이면 전체 대칭 축약(eigvalsh). 그보다 크면 결정적 시작벡터
    (all-ones → 고정 fallback)에서 λ_max 는 R 에, λ_min 은 Cholesky 로 적용한
    R⁻¹ 에 Lanczos 반복을 건다.
    """
    mat = np.asarray(r, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InputValidationError(f"expected a square matrix, got shape {mat.shape}")
    m = mat.shape[0]
    scale = max(1.0, float(np.max(np.abs(mat)))) if m else 1.0
    if m and np.max(np.abs(mat - mat.T)) > SYMMETRY_TOL * scale:
        raise InputValidationError("matrix is not symmetric")
    if m == 0:
        raise InputValidationError("empty matrix has no eigenvalues")
    if m <= DENSE_EIG_LIMIT:
        values = sla.eigvalsh(mat)
        return float(values[0]), float(values[-1])

    lam_max = _largest(mat, m, tol, "lambda_max lanczos")
    try:
        cho = sla.cho_factor(mat)
    except np.linalg.LinAlgError:
        logger.warning("matrix is not positive definite; reporting lambda_min = 0")
        return 0.0, lam_max
    inverse = LinearOperator((m, m), matvec=lambda v: sla.cho_solve(cho, v), dtype=float)
    inv_mu = _largest(inverse, m, tol, "lambda_min lanczos")
    lam_min = 1.0 / inv_mu if inv_mu > 0 else 0.0
    return lam_min, lam_max
