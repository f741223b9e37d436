"""
SelfTest Service - 핵심 불변식 점검
헬스 체크처럼 항목별 status 와 전체 status 를 담은 dict 를 돌려준다.
"""
from fractions import Fraction
from typing import Dict, List

import numpy as np

from ..errors import MZSphereError
from ..numerics.approximation import (
    christoffel_upper_estimate,
    discrete_orthonormal_basis,
    fit,
    lebesgue_constant,
)
from ..numerics.core_math import BasisSpec, basis_matrix, dim_poly, gegenbauer_eval, kernel_E
from ..numerics.linalg import factorize, lsq_solve, normal_equations_solve
from ..numerics.mz_analysis import build_design, frame_operator
from ..numerics.pointsets import fibonacci_layer, gauss_product_layer
from ..numerics.quadrature import certify_rule, integrate, lsq_weights
from ..numerics.sobolev_lab import (
    ZonalTestFunction,
    cubature_l2_error,
    lsq_error_exact,
    sobolev_kernel,
    uniform_error_report,
)
from ..repositories.base import logger


def _legendre_exact(ell: int, t: Fraction) -> Fraction:
    # Bonnet 점화식, 유리수 연산
    p0, p1 = Fraction(1), t
    if ell == 0:
        return p0
    for k in range(2, ell + 1):
        p0, p1 = p1, ((2 * k - 1) * t * p1 - (k - 1) * p0) / k
    return p1


class SelfTestService:
    """불변식 모음 실행을 처리하는 Service"""

    def __init__(self, quick: bool = True):
        self.quick = quick
        self.degree = 4 if quick else 12
        self.rng = np.random.Generator(np.random.Philox(key=20240607))

    def _random_points(self, count: int) -> np.ndarray:
        g = self.rng.standard_normal((count, 3))
        return g / np.linalg.norm(g, axis=1, keepdims=True)

    # -- checks -------------------------------------------------------------

    def check_gegenbauer(self) -> float:
        worst = 0.0
        for ell in range(11):
            for t in (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)):
                exact = float(_legendre_exact(ell, t))
                worst = max(worst, abs(gegenbauer_eval(0.5, ell, float(t)) - exact))
        return worst

    def check_dimensions(self) -> float:
        ok = dim_poly(2, 3) == 16 and dim_poly(4, 2) == 20
        return 0.0 if ok else 1.0

    def check_addition_theorem(self) -> float:
        n = self.degree
        spec = BasisSpec(n=n)
        x, y = self._random_points(2)
        lhs = float(basis_matrix(spec, x[None, :])[0] @ basis_matrix(spec, y[None, :])[0])
        return abs(lhs - kernel_E(2, n, float(np.clip(x @ y, -1.0, 1.0))))

    def check_gauss_kappa(self) -> float:
        sys = build_design(gauss_product_layer(self.degree), self.degree)
        return max(abs(sys.a_est - 1.0), abs(sys.b_est - 1.0))

    def check_projection(self) -> float:
        n = self.degree
        sys = build_design(fibonacci_layer(n, 2.0), n)
        coeffs = self.rng.standard_normal(sys.spec.size)
        samples = sys.basis_at_nodes() @ coeffs
        return float(np.max(np.abs(fit(sys, samples).coefficients - coeffs)))

    def check_normal_equations(self) -> float:
        u = self.rng.standard_normal((40, 12))
        b = self.rng.standard_normal(40)
        z = lsq_solve(factorize(u), b)
        return float(np.max(np.abs(z - normal_equations_solve(u, b))))

    def check_quadrature(self) -> float:
        sys = build_design(fibonacci_layer(self.degree, 2.0), self.degree)
        rule = lsq_weights(sys)
        cert = certify_rule(rule, sys)
        return max(abs(cert["sum_w"] - 1.0), cert["max_harmonic_residual"])

    def check_lebesgue_n0(self) -> float:
        sys = build_design(fibonacci_layer(3, 2.0), 0)
        return abs(lebesgue_constant(sys, 8) - 1.0)

    def check_parseval(self) -> float:
        n = self.degree
        f = ZonalTestFunction(pole=np.array([0.0, 0.6, 0.8]), t=3.0, l_max=16)
        sys = build_design(gauss_product_layer(n), n)
        approx = fit(sys, f(sys.layer.points))
        return abs(lsq_error_exact(f, approx, n) - cubature_l2_error(f, approx, 2 * f.l_max + 2))

    def check_holder(self) -> float:
        n = self.degree
        f = ZonalTestFunction(pole=np.array([0.0, 0.0, 1.0]), t=3.0, l_max=16)
        sys = build_design(fibonacci_layer(n, 2.0), n)
        samples = f(sys.layer.points)
        err_quad = abs(f.integral - integrate(lsq_weights(sys), samples))
        err_l2 = lsq_error_exact(f, fit(sys, samples), n)
        # 0 이하이면 통과
        return max(0.0, err_quad - err_l2)

    def check_frame_operator(self) -> float:
        sys = build_design(fibonacci_layer(self.degree, 2.0), self.degree)
        return float(np.max(np.abs(frame_operator(sys) - sys.u.T @ sys.u)))

    def check_discrete_orthonormal_basis(self) -> float:
        sys = build_design(fibonacci_layer(self.degree, 2.0), self.degree)
        c = discrete_orthonormal_basis(sys)
        return float(np.max(np.abs(c.T @ sys.gram @ c - np.eye(c.shape[1]))))

    def check_christoffel_bound(self) -> float:
        sys = build_design(fibonacci_layer(self.degree, 2.0), self.degree)
        upper = christoffel_upper_estimate(sys, 16)
        return max(0.0, lebesgue_constant(sys, 16) - upper) / upper

    def check_sobolev_kernel(self) -> float:
        # σ = 0, u = 1: Σ (2ℓ+1) = (L+1)²
        l_max = 4 * self.degree
        value = sobolev_kernel(2, 0.0, 1.0, l_max)
        return abs(value - (l_max + 1) ** 2) / (l_max + 1) ** 2

    def check_uniform_error(self) -> float:
        n = self.degree
        f = ZonalTestFunction(pole=np.array([0.6, 0.0, 0.8]), t=3.0, l_max=16)
        sys = build_design(gauss_product_layer(n), n)
        report = uniform_error_report(f, sys, fit(sys, f(sys.layer.points)), grid_resolution=24)
        # 1 이하이면 통과
        return report["err_sup"] / report["lebesgue_bound"]

    def _checks(self) -> List[tuple]:
        return [
            ("gegenbauer_rational_oracle", self.check_gegenbauer, 1e-12),
            ("dimension_formulas", self.check_dimensions, 0.0),
            ("addition_theorem", self.check_addition_theorem, 1e-10),
            ("gauss_kappa_one", self.check_gauss_kappa, 1e-9),
            ("projection_exactness", self.check_projection, 1e-9),
            ("normal_equations_oracle", self.check_normal_equations, 1e-8),
            ("quadrature_exactness", self.check_quadrature, 1e-9),
            ("lebesgue_degree_zero", self.check_lebesgue_n0, 1e-12),
            ("parseval_vs_cubature", self.check_parseval, 1e-8),
            ("hoelder_chain", self.check_holder, 1e-9),
            ("frame_operator_is_gram", self.check_frame_operator, 1e-12),
            ("discrete_orthonormal_basis", self.check_discrete_orthonormal_basis, 1e-10),
            ("christoffel_dominates_lebesgue", self.check_christoffel_bound, 1e-9),
            ("sobolev_kernel_diagonal", self.check_sobolev_kernel, 1e-12),
            ("lebesgue_inequality", self.check_uniform_error, 1.0),
        ]

    def run(self) -> Dict[str, object]:
        """각 점검을 실행하고 status 를 모은다. 한 항목의 예외는 그 항목만 실패로 기록한다."""
        results = []
        for name, check, tol in self._checks():
            entry: Dict[str, object] = {"name": name, "tolerance": tol}
            try:
                value = check()
                entry["value"] = value
                entry["status"] = "ok" if value <= tol else "failed"
            except MZSphereError as e:
                entry.update({"status": "failed", "error_code": e.error_code, "message": e.message})
            except Exception as e:  # noqa: BLE001
                entry.update({"status": "failed", "error_code": "INTERNAL_ERROR", "message": str(e)})
            if entry["status"] != "ok":
                logger.warning("selftest check failed | name=%s detail=%s", name, entry)
            results.append(entry)
        failed = [r["name"] for r in results if r["status"] != "ok"]
        return {
            "status": "ok" if not failed else "failed",
            "quick": self.quick,
            "degree": self.degree,
            "checks": results,
            "failed": failed,
            "message": "모든 불변식 점검을 통과했습니다." if not failed else f"{len(failed)}개 점검이 실패했습니다.",
        }
