"""Service 레이어 - 파이프라인별 비즈니스 로직"""
from .layer_service import LayerService
from .mz_service import MZService
from .fit_service import FitService
from .quadrature_service import QuadratureService
from .sweep_service import SweepService
from .selftest_service import SelfTestService

__all__ = [
    "LayerService",
    "MZService",
    "FitService",
    "QuadratureService",
    "SweepService",
    "SelfTestService",
]
