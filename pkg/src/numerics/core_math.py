"""
구면 조화 함수 기반 수학 커널
Gegenbauer 다항식, 조화 공간 차원, 재생핵 E_n, S² 실수 정규직교 기저

측도는 확률측도(∫dσ = 1)로 통일한다. 따라서 상수 기저 Y_{0,1} ≡ 1 이고
d=2에서 E_n(x,x) = d_n = (n+1)² 이 정확히 성립한다.
"""
from dataclasses import dataclass
from math import comb
from typing import Iterator, Tuple, Union

import logging

import numpy as np

from ..errors import DomainError, UnsupportedDimension

logger = logging.getLogger("mzsphere")

ArrayLike = Union[float, np.ndarray]

DOMAIN_TOL = 1e-12
UNIT_TOL = 1e-12
INT64_MAX = 2**63 - 1


def _check_interval(t: ArrayLike) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if arr.size and (np.any(arr < -1.0 - DOMAIN_TOL) or np.any(arr > 1.0 + DOMAIN_TOL)):
        raise DomainError(
            "argument outside [-1, 1]",
            recovery_guide="u = x·y 는 단위벡터 내적이어야 합니다.",
        )
    return np.clip(arr, -1.0, 1.0)


def check_unit_points(points: np.ndarray, dim: int = 3) -> np.ndarray:
    """(N, dim) 배열로 정리하고 |x| = 1 (허용오차 1e-12)을 검증한다."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[-1] != dim:
        raise DomainError(f"points must have {dim} coordinates, got shape {pts.shape}")
    norms = np.linalg.norm(pts, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_TOL)
    if bad.size:
        raise DomainError(
            "point is not on the unit sphere",
            recovery_guide="좌표를 정규화한 뒤 다시 시도하세요.",
            index=int(bad[0]),
            norm=float(norms[bad[0]]),
        )
    return pts


# ---------------------------------------------------------------------------
# Gegenbauer / 차원
# ---------------------------------------------------------------------------

def gegenbauer_table(lam: float, n: int, t: ArrayLike) -> np.ndarray:
    """C_0^λ(t), ..., C_n^λ(t) 를 3항 점화식으로 한 번에 계산한다.

    정규화는 C_ℓ^λ(1) = Γ(ℓ+2λ)/(Γ(2λ)Γ(ℓ+1)), 반환 shape은 (n+1,) + t.shape.
    """
    if lam <= 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    x = _check_interval(t)
    table = np.empty((n + 1,) + x.shape, dtype=float)
    table[0] = 1.0
    if n >= 1:
        table[1] = 2.0 * lam * x
    for ell in range(2, n + 1):
        table[ell] = (
            2.0 * (ell + lam - 1.0) * x * table[ell - 1]
            - (ell + 2.0 * lam - 2.0) * table[ell - 2]
        ) / ell
    return table


def gegenbauer_eval(lam: float, ell: int, t: ArrayLike) -> ArrayLike:
    """C_ℓ^λ(t)"""
    values = gegenbauer_table(lam, ell, t)[ell]
    return float(values) if np.ndim(values) == 0 else values


def dim_harmonic(d: int, ell: int) -> int:
    """N(d, ℓ) = dim H_ℓ^d (정수 연산)"""
    if d < 2 or ell < 0:
        raise DomainError(f"need d >= 2 and ell >= 0, got d={d}, ell={ell}")
    if ell == 0:
        return 1
    # (2ℓ+d-1)(ℓ+d-2)! / ((d-1)! ℓ!) = (2ℓ+d-1)·C(ℓ+d-2, ℓ)/(d-1)
    return (2 * ell + d - 1) * comb(ell + d - 2, ell) // (d - 1)


def dim_poly(d: int, n: int) -> int:
    """d_n = dim Π_n^d = (2n+d)Γ(n+d)/(Γ(d+1)Γ(n+1))"""
    if d < 2 or n < 0:
        raise DomainError(f"need d >= 2 and n >= 0, got d={d}, n={n}")
    value = (2 * n + d) * comb(n + d - 1, n) // d
    if value > INT64_MAX:
        raise OverflowError(f"dim Π_{n}^{d} = {value} exceeds the int64 range")
    return value


def kernel_E(d: int, n: int, u: ArrayLike) -> ArrayLike:
    """재생핵 E_n(x,y) = Σ_{ℓ≤n} ((ℓ+λ)/λ) C_ℓ^λ(x·y), λ = (d-1)/2"""
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    lam = (d - 1) / 2.0
    table = gegenbauer_table(lam, n, u)
    factors = (np.arange(n + 1) + lam) / lam
    values = np.tensordot(factors, table, axes=(0, 0))
    return float(values) if np.ndim(values) == 0 else values


# ---------------------------------------------------------------------------
# S² 실수 정규직교 기저
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisSpec:
    """Π_n^d 기저의 (ℓ, k) 열거 규약.

    ℓ 블록 안에서는 m = 0, 이후 m = 1..ℓ 마다 (cos, sin) 쌍.
    0-based 인덱스: (ℓ, m=0) → ℓ², (ℓ, m, cos) → ℓ²+2m-1, (ℓ, m, sin) → ℓ²+2m.
    """

    n: int
    d: int = 2

    def __post_init__(self):
        if self.d < 2 or self.n < 0:
            raise DomainError(f"invalid basis spec d={self.d}, n={self.n}")

    @property
    def size(self) -> int:
        return dim_poly(self.d, self.n)

    def pairs(self) -> Iterator[Tuple[int, int]]:
        """(ℓ, k), k = 1..N(d,ℓ), 사전식 순서"""
        for ell in range(self.n + 1):
            for k in range(1, dim_harmonic(self.d, ell) + 1):
                yield ell, k

    def degrees(self) -> np.ndarray:
        """각 기저 인덱스의 차수 ℓ"""
        return np.array([ell for ell, _ in self.pairs()], dtype=int)

    def block(self, ell: int) -> slice:
        start = dim_poly(self.d, ell - 1) if ell > 0 else 0
        return slice(start, start + dim_harmonic(self.d, ell))

    def index(self, ell: int, m: int, kind: str = "cos") -> int:
        """d=2 전용: (ℓ, m, cos|sin) → 0-based 인덱스"""
        self._require_sphere()
        if not 0 <= m <= ell <= self.n:
            raise DomainError(f"invalid (ell, m)=({ell}, {m}) for n={self.n}")
        if m == 0:
            return ell * ell
        return ell * ell + 2 * m - (1 if kind == "cos" else 0)

    def _require_sphere(self):
        if self.d != 2:
            raise UnsupportedDimension(f"basis evaluation is implemented for d=2 only, got d={self.d}")


def basis_matrix(spec: BasisSpec, points: np.ndarray) -> np.ndarray:
    """Φ(x_k) 를 행으로 쌓은 (N, d_n) 행렬.

    완전 정규화 associated Legendre 점화식(계수에 계승 없음)을 sin^m θ 로 나눈
    형태로 돌리고, s^m cos mφ / s^m sin mφ 는 (x1 + i x2)^m 점화식으로 얻는다.
    극점 근처에서도 sin θ 를 √(1-cos²θ) 로 만들지 않는다.
    """
    spec._require_sphere()
    pts = check_unit_points(points)
    n = spec.n
    x1, x2, t = pts[:, 0], pts[:, 1], pts[:, 2]
    out = np.empty((pts.shape[0], (n + 1) ** 2), dtype=float)

    qmm = np.ones_like(t)
    cm = np.ones_like(t)
    sm = np.zeros_like(t)
    for m in range(n + 1):
        if m == 1:
            qmm = np.sqrt(3.0) * qmm
        elif m >= 2:
            qmm = np.sqrt((2.0 * m + 1.0) / (2.0 * m)) * qmm
        if m >= 1:
            cm, sm = x1 * cm - x2 * sm, x1 * sm + x2 * cm

        def store(ell: int, q: np.ndarray):
            base = ell * ell
            if m == 0:
                out[:, base] = q
            else:
                out[:, base + 2 * m - 1] = q * cm
                out[:, base + 2 * m] = q * sm

        store(m, qmm)
        if m == n:
            continue
        q_prev2 = qmm
        q_prev = np.sqrt(2.0 * m + 3.0) * t * qmm
        store(m + 1, q_prev)
        for ell in range(m + 2, n + 1):
            lm, lp = ell - m, ell + m
            a = np.sqrt((2.0 * ell - 1.0) * (2.0 * ell + 1.0) / (lm * lp))
            b = np.sqrt(
                (2.0 * ell + 1.0) * (lp - 1.0) * (lm - 1.0) / (lm * lp * (2.0 * ell - 3.0))
            )
            q = a * t * q_prev - b * q_prev2
            store(ell, q)
            q_prev2, q_prev = q_prev, q
    return out


def basis_eval(spec: BasisSpec, x: np.ndarray) -> np.ndarray:
    """Φ(x) = (Y_{ℓ,k}(x)), 길이 d_n"""
    return basis_matrix(spec, np.asarray(x, dtype=float).reshape(1, -1))[0]
