"""
내장 샘플 소스
fit/quad 커맨드가 이름으로 고를 수 있는 시험 함수 모음
"""
from typing import Callable, Dict

import numpy as np

from ..errors import InputValidationError
from ..models.schemas import ZonalFunctionConfig
from ..numerics.sobolev_lab import ZonalTestFunction

SampleSource = Callable[[np.ndarray], np.ndarray]


def _constant(points: np.ndarray) -> np.ndarray:
    return np.ones(np.atleast_2d(points).shape[0])


def _exp_z(points: np.ndarray) -> np.ndarray:
    return np.exp(np.atleast_2d(points)[:, 2])


def _x3(points: np.ndarray) -> np.ndarray:
    return np.atleast_2d(points)[:, 2].copy()


BUILTIN_SOURCES: Dict[str, SampleSource] = {
    "constant": _constant,
    "exp_z": _exp_z,
    "x3": _x3,
}

# exp(x₃) 의 확률측도 적분 = sinh(1)
KNOWN_INTEGRALS: Dict[str, float] = {
    "constant": 1.0,
    "exp_z": float(np.sinh(1.0)),
    "x3": 0.0,
}


def zonal_from_config(cfg: ZonalFunctionConfig) -> ZonalTestFunction:
    pole = np.asarray(cfg.pole, dtype=float)
    return ZonalTestFunction(pole=pole / np.linalg.norm(pole), t=cfg.t, l_max=cfg.l_max)


def resolve_source(name: str, zonal: ZonalFunctionConfig) -> SampleSource:
    """이름 → 점 배열을 받는 callable. zonal 은 ZonalTestFunction 자체를 돌려준다."""
    if name == "zonal":
        return zonal_from_config(zonal)
    try:
        return BUILTIN_SOURCES[name]
    except KeyError:
        raise InputValidationError(
            f"unknown sample function {name!r}",
            recovery_guide="function 은 zonal, constant, exp_z, x3 중 하나이거나 --values 파일을 쓰세요.",
        ) from None
