"""
Sobolev 실험실
조화 계수가 정확히 알려진 zonal 시험 함수, Parseval 기반 정확한 오차,
수렴 속도 / Lebesgue 성장 스윕
"""
from dataclasses import dataclass, field
from math import fsum, sqrt
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import logging

import numpy as np
from scipy import stats

from ..errors import InputValidationError, MZDeficient
from ..utils.parallel import ordered_map
from .approximation import (
    Approximant,
    fit,
    lebesgue_constant,
    lebesgue_refinement,
    refinement_resolutions,
)
from .core_math import BasisSpec, basis_eval, basis_matrix, check_unit_points, dim_harmonic, gegenbauer_table
from .mz_analysis import DesignSystem, build_design
from .pointsets import Layer, covering_grid

logger = logging.getLogger("mzsphere")

LayerFamily = Callable[[int], Layer]

SLOPE_FLOOR = 1e3 * np.finfo(float).eps
STABILITY_SLACK = 1e-8
DEFAULT_L_MAX = 128
NORM_OFFSET = 0.01


@dataclass(frozen=True, eq=False)
class ZonalTestFunction:
    """f(x) = Σ_{ℓ≤L} a_ℓ ((ℓ+λ)/λ) C_ℓ^λ(x·p).

    기본 계수 법칙은 a_ℓ = (1+ℓ)^{-t}. degree_coefficients 를 주면 그 값을
    a_0..a_L 로 그대로 쓰는 유한 지지 함수가 된다.
    """

    pole: np.ndarray
    t: float = 3.0
    l_max: int = DEFAULT_L_MAX
    d: int = 2
    degree_coefficients: Optional[Tuple[float, ...]] = None
    _a: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        p = check_unit_points(self.pole, dim=self.d + 1)[0].copy()
        p.setflags(write=False)
        object.__setattr__(self, "pole", p)
        if self.degree_coefficients is not None:
            a = np.array(self.degree_coefficients, dtype=float).reshape(-1)
            if a.size == 0:
                raise InputValidationError("degree_coefficients must not be empty")
            object.__setattr__(self, "l_max", int(a.size - 1))
        else:
            if self.t <= (self.d + 1) / 2.0:
                raise InputValidationError(
                    f"decay exponent t must exceed {(self.d + 1) / 2.0}, got {self.t}"
                )
            if self.l_max < 0:
                raise InputValidationError(f"l_max must be >= 0, got {self.l_max}")
            a = (1.0 + np.arange(self.l_max + 1, dtype=float)) ** (-float(self.t))
        a.setflags(write=False)
        object.__setattr__(self, "_a", a)

    @classmethod
    def from_degree_coefficients(cls, pole: np.ndarray, coefficients: Sequence[float], d: int = 2) -> "ZonalTestFunction":
        return cls(pole=pole, d=d, degree_coefficients=tuple(float(c) for c in coefficients))

    @property
    def finite(self) -> bool:
        """유한 지지(명시 계수) 여부"""
        return self.degree_coefficients is not None

    @property
    def lam(self) -> float:
        return (self.d - 1) / 2.0

    @property
    def degree_law(self) -> np.ndarray:
        """a_0, ..., a_L"""
        return self._a

    @property
    def s_eff(self) -> Optional[float]:
        """실현되는 L₂ 감쇠 지수 t - d/2"""
        return None if self.finite else float(self.t) - self.d / 2.0

    @property
    def integral(self) -> float:
        """∫ f dσ = a_0"""
        return float(self._a[0])

    def block_energies(self) -> np.ndarray:
        """Σ_m ⟨f, Y_{ℓ,m}⟩² = a_ℓ² N(d, ℓ)"""
        dims = np.array([dim_harmonic(self.d, ell) for ell in range(self.l_max + 1)], dtype=float)
        return self._a**2 * dims

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = check_unit_points(points, dim=self.d + 1)
        u = np.clip(pts @ self.pole, -1.0, 1.0)
        lam = self.lam
        table = gegenbauer_table(lam, self.l_max, u)
        factors = self._a * (np.arange(self.l_max + 1) + lam) / lam
        return np.tensordot(factors, table, axes=(0, 0))

    def harmonic_coefficients(self, n: int) -> np.ndarray:
        """S_n f 의 계수: ⟨f, Y_{ℓ,m}⟩ = a_ℓ Y_{ℓ,m}(p), ℓ ≤ n"""
        spec = BasisSpec(n=n, d=self.d)
        law = np.zeros(n + 1)
        top = min(n, self.l_max)
        law[: top + 1] = self._a[: top + 1]
        return law[spec.degrees()] * basis_eval(spec, self.pole)

    def describe(self) -> Dict[str, Any]:
        if self.finite:
            return {"kind": "finite", "coefficients": list(self._a), "pole": list(self.pole)}
        return {"kind": "zonal", "t": float(self.t), "l_max": self.l_max, "pole": list(self.pole)}


# ---------------------------------------------------------------------------
# 정확한 노름 / 오차
# ---------------------------------------------------------------------------

def _sobolev_weights(d: int, sigma: float, l_max: int) -> np.ndarray:
    ell = np.arange(l_max + 1, dtype=float)
    return (1.0 + ell * (ell + d - 1)) ** sigma


def sobolev_norm(f: ZonalTestFunction, sigma: float) -> float:
    """‖f‖_{H^σ} = (Σ (1+ℓ(ℓ+d-1))^σ a_ℓ² N(d,ℓ))^{1/2}"""
    if sigma < 0:
        raise InputValidationError(f"sigma must be >= 0, got {sigma}")
    terms = _sobolev_weights(f.d, sigma, f.l_max) * f.block_energies()
    return sqrt(fsum(terms))


def sobolev_kernel(d: int, sigma: float, u: Any, l_max: int) -> Any:
    """절단된 zonal H^σ 재생핵 Σ (1+ℓ(ℓ+d-1))^{-σ} ((ℓ+λ)/λ) C_ℓ^λ(u)"""
    if d < 2:
        raise InputValidationError(f"need d >= 2, got {d}")
    lam = (d - 1) / 2.0
    table = gegenbauer_table(lam, l_max, u)
    factors = (np.arange(l_max + 1) + lam) / lam / _sobolev_weights(d, sigma, l_max)
    values = np.tensordot(factors, table, axes=(0, 0))
    return float(values) if np.ndim(values) == 0 else values


def _tail_squared(f: ZonalTestFunction, n: int) -> float:
    if n >= f.l_max:
        if f.finite:
            return 0.0
        raise InputValidationError(
            "truncation degree must exceed n",
            n=n,
            l_max=f.l_max,
            recovery_guide="l_max 를 n 보다 크게 잡으세요.",
        )
    return fsum(f.block_energies()[n + 1:])


def projection_error_exact(f: ZonalTestFunction, n: int) -> float:
    """‖f - S_n f‖₂ (Parseval 꼬리합)"""
    if n < 0:
        raise InputValidationError(f"degree must be >= 0, got {n}")
    return sqrt(_tail_squared(f, n))


def lsq_error_exact(f: ZonalTestFunction, approx: Approximant, n: int) -> float:
    """‖f - L_n f‖₂² = ‖f - S_n f‖₂² + |f_{≤n} - a|²"""
    if approx.n != n:
        raise InputValidationError("approximant degree differs from n", approx_n=approx.n, n=n)
    diff = f.harmonic_coefficients(n) - approx.coefficients
    return sqrt(_tail_squared(f, n) + fsum(diff * diff))


def cubature_l2_error(f: Callable[[np.ndarray], np.ndarray], approx: Approximant, reference_degree: int) -> float:
    """기준 구적으로 계산한 ‖f - p‖₂ (Parseval 과 독립적인 검증 경로)"""
    from .quadrature import reference_layer

    layer = reference_layer(reference_degree)
    resid = np.asarray(f(layer.points), dtype=float) - approx.values(layer.points)
    return sqrt(max(0.0, fsum(layer.weights * resid * resid)))


def stability_terms(f: ZonalTestFunction, sys: DesignSystem, approx: Approximant) -> Tuple[float, float]:
    """(‖S_n f - L_n f‖₂, A^{-1} B^{1/2} ‖f - S_n f‖_(n))"""
    s_coeffs = f.harmonic_coefficients(sys.n)
    left = float(np.linalg.norm(s_coeffs - approx.coefficients))
    tail_at_nodes = f(sys.layer.points) - sys.basis_at_nodes() @ s_coeffs
    discrete = sqrt(fsum(sys.layer.weights * tail_at_nodes * tail_at_nodes))
    right = sqrt(sys.b_est) / sys.a_est * discrete
    return left, right


def uniform_error_report(
    f: ZonalTestFunction,
    sys: DesignSystem,
    approx: Approximant,
    grid_resolution: Optional[int] = None,
) -> Dict[str, float]:
    """격자 위 균등 오차와 Lebesgue 부등식 ‖f - L_n f‖_∞ ≤ (1 + ‖L_n‖)·E_n(f) 의 측정값"""
    r = grid_resolution or max(8, 2 * f.l_max)
    grid = covering_grid(r)
    f_grid = f(grid)
    err_sup = float(np.max(np.abs(f_grid - approx.values(grid))))
    s_grid = basis_matrix(sys.spec, grid) @ f.harmonic_coefficients(sys.n)
    proxy = float(np.max(np.abs(f_grid - s_grid)))
    lebesgue = lebesgue_constant(sys, grid_resolution)
    return {
        "grid_resolution": r,
        "err_sup": err_sup,
        "best_approx_proxy": proxy,
        "lebesgue": lebesgue,
        "lebesgue_bound": (1.0 + lebesgue) * proxy,
    }


# ---------------------------------------------------------------------------
# 기울기 적합
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    lower: float
    upper: float
    points: int

    def to_dict(self) -> Dict[str, float]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "ci95_lower": self.lower,
            "ci95_upper": self.upper,
            "points": self.points,
        }


def fit_slope(ns: Sequence[int], errors: Sequence[float]) -> Optional[SlopeFit]:
    """(log n, log err) 최소제곱 직선. 반올림 바닥(1e3·eps 미만)과 n = 0 은 버린다."""
    pairs = [
        (float(n), float(e))
        for n, e in zip(ns, errors)
        if n >= 1 and e is not None and np.isfinite(e) and e >= SLOPE_FLOOR
    ]
    if len(pairs) < 2:
        return None
    x = np.log([p[0] for p in pairs])
    y = np.log([p[1] for p in pairs])
    if np.ptp(x) == 0.0:
        return None
    res = stats.linregress(x, y)
    if len(pairs) > 2:
        half = float(stats.t.ppf(0.975, len(pairs) - 2)) * float(res.stderr)
    else:
        half = 0.0
    return SlopeFit(
        slope=float(res.slope),
        intercept=float(res.intercept),
        lower=float(res.slope) - half,
        upper=float(res.slope) + half,
        points=len(pairs),
    )


def _slope_dict(fitted: Optional[SlopeFit]) -> Optional[Dict[str, float]]:
    return fitted.to_dict() if fitted is not None else None


# ---------------------------------------------------------------------------
# 스윕
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceReport:
    family: str
    function: Dict[str, Any]
    n_list: Tuple[int, ...]
    rows: Tuple[Dict[str, Any], ...]
    slopes: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "function": self.function,
            "n_list": list(self.n_list),
            "rows": [dict(r) for r in self.rows],
            "slopes": self.slopes,
        }


def _convergence_row(
    family: LayerFamily,
    f: ZonalTestFunction,
    n: int,
    rate_norm: Optional[float],
    with_lebesgue: bool,
    grid_resolution: Optional[int],
) -> Dict[str, Any]:
    from .quadrature import check_holder, integrate, lsq_weights

    layer = family(n)
    try:
        sys = build_design(layer, n)
    except MZDeficient as e:
        logger.warning("sweep gap | n=%d l_n=%d reason=%s", n, layer.size, e.message)
        return {"n": n, "l_n": layer.size, "status": "mz_deficient", "error": e.message}

    samples = f(layer.points)
    approx = fit(sys, samples)
    rule = lsq_weights(sys)
    err_l2 = lsq_error_exact(f, approx, n)
    err_sn = projection_error_exact(f, n)
    err_quad = abs(f.integral - integrate(rule, samples))
    check_holder(n, err_quad, err_l2)
    left, right = stability_terms(f, sys, approx)
    row: Dict[str, Any] = {
        "n": n,
        "l_n": layer.size,
        "status": "ok",
        "A": sys.a_est,
        "B": sys.b_est,
        "kappa": sys.kappa,
        "err_l2": err_l2,
        "err_Sn": err_sn,
        "err_quad": err_quad,
        "sum_abs_w": rule.sum_abs_weights,
        "stability_lhs": left,
        "stability_rhs": right,
        "stability_ok": bool(left <= right + STABILITY_SLACK),
    }
    if rate_norm and n >= 1 and f.s_eff is not None:
        row["rate_ratio"] = err_l2 * n**f.s_eff / (sqrt(1.0 + sys.kappa**2) * rate_norm)
    if with_lebesgue:
        row["lebesgue"] = lebesgue_constant(sys, grid_resolution)
    logger.info(
        "sweep point | n=%d kappa=%.6g err_l2=%.6g err_quad=%.6g",
        n, sys.kappa, err_l2, err_quad,
    )
    return row


def convergence_sweep(
    family: LayerFamily,
    f: ZonalTestFunction,
    n_list: Sequence[int],
    family_tag: str = "custom",
    with_lebesgue: bool = False,
    grid_resolution: Optional[int] = None,
    threads: Optional[int] = None,
) -> ConvergenceReport:
    """n 마다 레이어 생성 → 피팅 → 정확한 오차 기록, 마지막에 log–log 기울기 적합"""
    degrees = sorted(set(int(n) for n in n_list))
    if not degrees or degrees[0] < 0:
        raise InputValidationError("n_list must hold non-negative degrees", n_list=list(n_list))
    if not f.finite and 2 * degrees[-1] > f.l_max:
        raise InputValidationError(
            "max(n_list) must not exceed l_max/2",
            max_n=degrees[-1],
            l_max=f.l_max,
        )
    rate_norm = None
    if f.s_eff is not None and f.s_eff - NORM_OFFSET >= 0:
        rate_norm = sobolev_norm(f, f.s_eff - NORM_OFFSET)

    rows = ordered_map(
        lambda n: _convergence_row(family, f, n, rate_norm, with_lebesgue, grid_resolution),
        degrees,
        threads=threads,
    )
    ok_rows = [r for r in rows if r["status"] == "ok"]
    ns = [r["n"] for r in ok_rows]
    slopes: Dict[str, Any] = {
        "err_l2": _slope_dict(fit_slope(ns, [r["err_l2"] for r in ok_rows])),
        "err_Sn": _slope_dict(fit_slope(ns, [r["err_Sn"] for r in ok_rows])),
        "err_quad": _slope_dict(fit_slope(ns, [r["err_quad"] for r in ok_rows])),
    }
    if f.s_eff is not None:
        slopes["predicted"] = -f.s_eff
        slopes["classical"] = -(f.s_eff - f.d / 2.0)
    return ConvergenceReport(
        family=family_tag,
        function=f.describe(),
        n_list=tuple(degrees),
        rows=tuple(rows),
        slopes=slopes,
    )


def lebesgue_sweep(
    family: LayerFamily,
    n_list: Sequence[int],
    grid_resolution: Optional[int] = None,
    refinements: int = 1,
    family_tag: str = "custom",
    d: int = 2,
) -> Dict[str, Any]:
    """n 별 Lebesgue 추정값과 성장 지수. 지수가 [(d-1)/2 - 0.3, d/2 + 0.3] 밖이면 경고."""
    from .approximation import default_grid_resolution

    degrees = sorted(set(int(n) for n in n_list))
    rows: List[Dict[str, Any]] = []
    for n in degrees:
        sys = build_design(family(n), n)
        base = grid_resolution or default_grid_resolution(sys.spec.size)
        refined = lebesgue_refinement(sys, refinement_resolutions(base, max(1, refinements)))
        value = refined[-1]["best"]
        rows.append({
            "n": n,
            "l_n": sys.layer.size,
            "kappa": sys.kappa,
            "lebesgue": value,
            "refinement": [r["value"] for r in refined],
            "ratio": value / (sqrt(sys.kappa) * max(n, 1)),
        })
    fitted = fit_slope([r["n"] for r in rows], [r["lebesgue"] for r in rows])
    lo, hi = (d - 1) / 2.0 - 0.3, d / 2.0 + 0.3
    exponent = fitted.slope if fitted is not None else None
    exponent_ok = exponent is None or lo <= exponent <= hi
    if not exponent_ok:
        logger.warning(
            "lebesgue growth exponent outside bracket | exponent=%.4g bracket=[%.2g, %.2g]",
            exponent, lo, hi,
        )
    return {
        "family": family_tag,
        "n_list": degrees,
        "rows": rows,
        "exponent": _slope_dict(fitted),
        "bracket": [lo, hi],
        "exponent_ok": bool(exponent_ok),
    }
