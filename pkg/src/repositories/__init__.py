"""Repository 레이어 - 파일 데이터 접근 로직"""
from .base import BaseFileRepository
from .layer_repository import LayerRepository
from .approximant_repository import ApproximantRepository
from .rule_repository import RuleRepository
from .report_repository import ReportRepository

__all__ = [
    "BaseFileRepository",
    "LayerRepository",
    "ApproximantRepository",
    "RuleRepository",
    "ReportRepository",
]
