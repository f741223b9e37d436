"""
S² 샘플링 레이어 생성기와 기하 진단 (mesh norm, separation)
"""
from dataclasses import dataclass, field, replace
from math import ceil, pi
from typing import Any, Callable, Dict

import logging

import numpy as np
from scipy.spatial import cKDTree

from ..errors import InputValidationError, MZDeficient
from .core_math import check_unit_points, dim_poly

logger = logging.getLogger("mzsphere")

UnitPoint = np.ndarray
LayerFamily = Callable[[int], "Layer"]

RECOMMENDED_OVERSAMPLING = 1.2
GOLDEN_ANGLE = pi * (3.0 - np.sqrt(5.0))


@dataclass(frozen=True, eq=False)
class Layer:
    """샘플링 레이어 X_n: 단위구 위의 점과 양의 가중치 τ"""

    n: int
    points: np.ndarray
    weights: np.ndarray
    provenance: Dict[str, Any] = field(default_factory=dict)
    d: int = 2

    def __post_init__(self):
        if self.n < 0:
            raise InputValidationError(f"layer degree must be >= 0, got {self.n}")
        pts = check_unit_points(self.points, dim=self.d + 1).copy()
        w = np.array(self.weights, dtype=float).reshape(-1)
        if w.shape[0] != pts.shape[0]:
            raise InputValidationError(
                "weights and points differ in length",
                points=int(pts.shape[0]),
                weights=int(w.shape[0]),
            )
        if w.size and not np.all(w > 0):
            raise InputValidationError(
                "layer weights must be positive",
                index=int(np.flatnonzero(~(w > 0))[0]),
            )
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def size(self) -> int:
        """l_n"""
        return int(self.points.shape[0])

    def require_fitting(self, n: int) -> None:
        """피팅 가능 조건 l_n ≥ d_n (MZ 하한의 필요조건)"""
        needed = dim_poly(self.d, n)
        if self.size < needed:
            raise MZDeficient(
                f"layer has {self.size} points but dim Π_{n} = {needed}",
                l_n=self.size,
                d_n=needed,
            )

    def scaled(self, factor: float) -> "Layer":
        """τ → c·τ (MZ 부등식의 동차성 점검용)"""
        if factor <= 0:
            raise InputValidationError(f"scale factor must be positive, got {factor}")
        prov = dict(self.provenance, weight_scale=factor)
        return replace(self, weights=self.weights * factor, provenance=prov)


def _sphere_points(cos_theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    sin_theta = np.sqrt(np.clip(1.0 - cos_theta**2, 0.0, None))
    pts = np.column_stack((sin_theta * np.cos(phi), sin_theta * np.sin(phi), cos_theta))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# 생성기
# ---------------------------------------------------------------------------

def gauss_product_layer(n: int) -> Layer:
    """(n+1) Gauss–Legendre cos θ 노드 × (2n+2) 등간격 경도.

    확률측도에서 Π_{2n+1} 을 정확히 적분하므로 A = B = 1, κ = 1.
    """
    if n < 0:
        raise InputValidationError(f"degree must be >= 0, got {n}")
    nodes, gl_weights = np.polynomial.legendre.leggauss(n + 1)
    n_lon = 2 * n + 2
    phi = np.arange(n_lon) * (2.0 * pi / n_lon)
    cos_grid, phi_grid = np.meshgrid(nodes, phi, indexing="ij")
    points = _sphere_points(cos_grid.ravel(), phi_grid.ravel())
    weights = np.repeat(gl_weights / 2.0 / n_lon, n_lon)
    logger.debug("gauss layer | n=%d l_n=%d", n, points.shape[0])
    return Layer(n=n, points=points, weights=weights, provenance={"generator": "gauss", "n": n})


def fibonacci_layer(n: int, oversampling: float = 2.0, weight_scheme: str = "uniform") -> Layer:
    """⌈c·(n+1)²⌉ 개의 Fibonacci 나선 점, 등가중치.

    weight_scheme: "uniform" 이면 τ = 1/l_n, "dim" 이면 τ = 1/d_n.
    """
    if n < 0:
        raise InputValidationError(f"degree must be >= 0, got {n}")
    if oversampling <= 0:
        raise InputValidationError(f"oversampling must be positive, got {oversampling}")
    if oversampling < RECOMMENDED_OVERSAMPLING:
        logger.warning(
            "fibonacci layer below recommended oversampling | n=%d c=%g (< %g)",
            n, oversampling, RECOMMENDED_OVERSAMPLING,
        )
    count = max(1, int(ceil(oversampling * (n + 1) ** 2 - 1e-9)))
    k = np.arange(count, dtype=float)
    cos_theta = 1.0 - (2.0 * k + 1.0) / count
    phi = np.mod(k * GOLDEN_ANGLE, 2.0 * pi)
    points = _sphere_points(cos_theta, phi)
    if weight_scheme == "uniform":
        tau = 1.0 / count
    elif weight_scheme == "dim":
        tau = 1.0 / dim_poly(2, n)
    else:
        raise InputValidationError(f"unknown weight scheme {weight_scheme!r}")
    return Layer(
        n=n,
        points=points,
        weights=np.full(count, tau),
        provenance={
            "generator": "fibonacci",
            "n": n,
            "oversampling": oversampling,
            "weight_scheme": weight_scheme,
        },
    )


def _point_rng(seed: int, index: int) -> np.random.Generator:
    # counter 기반 Philox: (seed, index) 가 키
    key = (int(seed) % 2**64) * 2**64 + int(index)
    return np.random.Generator(np.random.Philox(key=key))


def perturb_layer(layer: Layer, epsilon: float, seed: int) -> Layer:
    """각 점을 측지 길이 ≤ ε/(n+1) 만큼 임의의 접선 방향으로 이동. τ 는 유지."""
    if epsilon < 0:
        raise InputValidationError(f"epsilon must be >= 0, got {epsilon}")
    prov = dict(layer.provenance, perturbation={"epsilon": epsilon, "seed": seed})
    if epsilon == 0:
        return replace(layer, provenance=prov)
    radius = epsilon / (layer.n + 1)
    moved = np.empty_like(layer.points)
    for k, x in enumerate(layer.points):
        rng = _point_rng(seed, k)
        g = rng.standard_normal(3)
        tangent = g - np.dot(g, x) * x
        norm = np.linalg.norm(tangent)
        if norm < 1e-300:
            tangent, norm = np.array([x[1], -x[0], 0.0]), np.hypot(x[0], x[1])
            if norm < 1e-300:
                tangent, norm = np.array([1.0, 0.0, 0.0]), 1.0
        angle = radius * rng.random()
        y = np.cos(angle) * x + np.sin(angle) * (tangent / norm)
        moved[k] = y / np.linalg.norm(y)
    return replace(layer, points=moved, provenance=prov)


def layer_family(name: str, **params: Any) -> LayerFamily:
    """스윕용 레이어 계열: n ↦ Layer"""
    if name == "gauss":
        return gauss_product_layer
    if name == "fibonacci":
        c = float(params.get("oversampling", 2.0))
        scheme = params.get("weight_scheme", "uniform")
        return lambda n: fibonacci_layer(n, c, scheme)
    if name == "perturbed":
        eps = float(params.get("epsilon", 0.5))
        seed = int(params.get("seed", 0))
        return lambda n: perturb_layer(gauss_product_layer(n), eps, seed)
    raise InputValidationError(
        f"unknown layer family {name!r}",
        recovery_guide="family는 gauss, fibonacci, perturbed 중 하나여야 합니다.",
    )


# ---------------------------------------------------------------------------
# 기하 진단
# ---------------------------------------------------------------------------

def covering_grid(resolution: int) -> np.ndarray:
    """위도–경도 격자: 내부 위도 (resolution-1)개 × 경도 2·resolution개 + 양 극점"""
    if resolution < 1:
        raise InputValidationError(f"grid resolution must be >= 1, got {resolution}")
    theta = np.arange(1, resolution) * (pi / resolution)
    phi = np.arange(2 * resolution) * (pi / resolution)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ring = _sphere_points(np.cos(tt.ravel()), pp.ravel())
    poles = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    return np.vstack((poles, ring))


def _chord_to_geodesic(chord: np.ndarray) -> np.ndarray:
    return 2.0 * np.arcsin(np.clip(chord / 2.0, 0.0, 1.0))


def geodesic_distance(x: np.ndarray, y: np.ndarray) -> float:
    """arccos(x·y)"""
    return float(np.arccos(np.clip(np.dot(x, y), -1.0, 1.0)))


def mesh_norm(layer: Layer, grid_resolution: int) -> float:
    """ρ(X) 의 격자 하한 추정: 격자점에서 가장 가까운 레이어 점까지의 최대 측지거리"""
    if layer.size == 0:
        raise InputValidationError("mesh norm of an empty layer")
    grid = covering_grid(grid_resolution)
    chord, _ = cKDTree(layer.points).query(grid, k=1)
    return float(_chord_to_geodesic(np.max(chord)))


def min_separation(layer: Layer) -> float:
    """모든 쌍에 대한 최소 측지거리 (KD-tree 최근접 이웃, 정확값)"""
    if layer.size < 2:
        raise InputValidationError("separation needs at least 2 points", l_n=layer.size)
    chord, _ = cKDTree(layer.points).query(layer.points, k=2)
    return float(_chord_to_geodesic(np.min(chord[:, 1])))


def layer_geometry(layer: Layer, grid_resolution: int) -> Dict[str, float]:
    """밀도/분리 상수: η = n·ρ(X_n), ε = (n+1)·δ(X_n)"""
    rho = mesh_norm(layer, grid_resolution)
    delta = min_separation(layer) if layer.size >= 2 else float("nan")
    return {
        "mesh_norm": rho,
        "separation": delta,
        "eta": layer.n * rho,
        "epsilon": (layer.n + 1) * delta,
    }
