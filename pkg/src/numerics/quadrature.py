"""
최소제곱 구적: 가중치 w_{n,k}, 구적 함수 I_n, 정확도 인증, 기준(reference) 구적
"""
from dataclasses import dataclass
from math import ceil, fsum
from typing import Any, Callable, Dict, Tuple

import logging
import threading

import numpy as np
from cachetools import LRUCache, cached

from ..errors import DimensionMismatch, InputValidationError, InvariantViolation
from .core_math import BasisSpec, basis_matrix
from .linalg import gram_apply_inverse
from .mz_analysis import DesignSystem
from .pointsets import Layer, gauss_product_layer

logger = logging.getLogger("mzsphere")

SampleSource = Callable[[np.ndarray], np.ndarray]

HOLDER_SLACK = 1e-9

reference_cache: LRUCache = LRUCache(maxsize=16)  # degree → Gauss 기준 레이어
_reference_lock = threading.Lock()


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """노드(레이어)와 부호 제약 없는 가중치, 인증된 정확도 차수"""

    layer: Layer
    weights: np.ndarray
    exactness_degree: int

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        if w.shape[0] != self.layer.size:
            raise DimensionMismatch(
                "rule weights do not match the layer",
                expected=self.layer.size,
                got=int(w.shape[0]),
            )
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def sum_weights(self) -> float:
        return fsum(self.weights)

    @property
    def sum_abs_weights(self) -> float:
        return fsum(np.abs(self.weights))

    @property
    def negative_weights(self) -> int:
        return int(np.count_nonzero(self.weights < 0))


def lsq_weights(sys: DesignSystem) -> QuadratureRule:
    """w = τ^{1/2} ⊙ (U R⁻¹ e₁) (I_n f = ∫ L_n f dσ)"""
    e1 = np.zeros(sys.spec.size)
    e1[0] = 1.0
    w = sys.sqrt_tau * (sys.u @ gram_apply_inverse(sys.factorization, e1))
    rule = QuadratureRule(layer=sys.layer, weights=w, exactness_degree=sys.n)
    if rule.negative_weights:
        logger.warning(
            "negative quadrature weights | n=%d count=%d sum_abs_w=%.6g",
            sys.n, rule.negative_weights, rule.sum_abs_weights,
        )
    return rule


def kernel_route_weights(sys: DesignSystem) -> np.ndarray:
    """w_k = τ_k ∫ D_n(x_k, ·) dσ 를 전체 계수행렬 R⁻¹Φ(X)ᵀ 의 첫 행에서 읽는다."""
    coeffs = gram_apply_inverse(sys.factorization, sys.basis_at_nodes().T)
    return sys.layer.weights * coeffs[0]


def integrate(rule: QuadratureRule, samples: np.ndarray) -> float:
    """Σ w_k f(x_k), 보정 합산(fsum)"""
    y = np.asarray(samples, dtype=float).reshape(-1)
    if y.shape[0] != rule.layer.size:
        raise DimensionMismatch(
            "sample vector length does not match the rule",
            expected=rule.layer.size,
            got=int(y.shape[0]),
        )
    return fsum(rule.weights * y)


# ---------------------------------------------------------------------------
# 기준 구적
# ---------------------------------------------------------------------------

@cached(cache=reference_cache, lock=_reference_lock)
def reference_layer(degree: int) -> Layer:
    """Π_degree 를 정확히 적분하는 Gauss 곱 격자 (n = ⌈degree/2⌉)"""
    if degree < 1:
        raise InputValidationError(f"reference degree must be >= 1, got {degree}")
    return gauss_product_layer(int(ceil(degree / 2)))


def reference_integral(f: SampleSource, degree: int) -> float:
    """∫ f dσ, 차수 ≤ degree 다항식에 대해 정확"""
    layer = reference_layer(degree)
    values = np.asarray(f(layer.points), dtype=float).reshape(-1)
    return fsum(layer.weights * values)


def check_holder(n: int, err_quad: float, err_l2: float) -> None:
    """|∫f - I_n f| ≤ ‖f - L_n f‖₂ (가중치 합 1, Cauchy-Schwarz)"""
    if err_quad > err_l2 + HOLDER_SLACK:
        raise InvariantViolation(
            "quadrature error exceeds the L2 approximation error",
            n=n,
            err_quad=err_quad,
            err_l2=err_l2,
        )


def quadrature_error(sys: DesignSystem, f: Any, reference_degree: int) -> Tuple[float, float]:
    """(|∫f - I_n f|, ‖f - L_n f‖₂).

    f 가 ZonalTestFunction 이면 두 값 모두 Parseval 로 정확하게, 아니면
    reference_degree 기준 구적으로 측정한다.
    """
    from .approximation import fit
    from .sobolev_lab import ZonalTestFunction, cubature_l2_error, lsq_error_exact

    if reference_degree < 2 * sys.n:
        raise InputValidationError(
            "reference degree must be at least 2n",
            reference_degree=reference_degree,
            n=sys.n,
        )
    samples = np.asarray(f(sys.layer.points), dtype=float)
    approx = fit(sys, samples)
    i_n = integrate(lsq_weights(sys), samples)
    if isinstance(f, ZonalTestFunction):
        exact = f.integral
        err_l2 = lsq_error_exact(f, approx, sys.n)
    else:
        exact = reference_integral(f, reference_degree)
        err_l2 = cubature_l2_error(f, approx, reference_degree)
    err_quad = abs(exact - i_n)
    check_holder(sys.n, err_quad, err_l2)
    return err_quad, err_l2


def certify_rule(rule: QuadratureRule, sys: DesignSystem) -> Dict[str, Any]:
    """모든 기저 원소에 대한 잔차 max |I_n(Y) - δ_{Y,1}| 로 정확도 차수 인증"""
    spec = BasisSpec(n=rule.exactness_degree, d=rule.layer.d)
    phi = basis_matrix(spec, rule.layer.points)
    moments = rule.weights @ phi
    target = np.zeros(spec.size)
    target[0] = 1.0
    residual = float(np.max(np.abs(moments - target)))
    return {
        "n": sys.n,
        "l_n": rule.layer.size,
        "sum_w": rule.sum_weights,
        "sum_abs_w": rule.sum_abs_weights,
        "exactness_degree": rule.exactness_degree,
        "max_harmonic_residual": residual,
        "negative_weights": rule.negative_weights,
    }
