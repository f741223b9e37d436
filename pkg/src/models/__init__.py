"""Pydantic 모델 정의"""
from .schemas import (
    FORMAT_VERSION,
    RunConfig,
    FamilyConfig,
    ZonalFunctionConfig,
    SampleSourceConfig,
    GenConfig,
    MZConfig,
    FitConfig,
    EvalConfig,
    QuadConfig,
    LebesgueConfig,
    SweepConfig,
    SelfTestConfig,
)

__all__ = [
    "FORMAT_VERSION",
    "RunConfig",
    "FamilyConfig",
    "ZonalFunctionConfig",
    "SampleSourceConfig",
    "GenConfig",
    "MZConfig",
    "FitConfig",
    "EvalConfig",
    "QuadConfig",
    "LebesgueConfig",
    "SweepConfig",
    "SelfTestConfig",
]
