"""
Layer Service - 레이어 생성 관련 비즈니스 로직
"""
from math import fsum

from ..models import GenConfig
from ..numerics.pointsets import Layer, layer_family, layer_geometry
from ..repositories.base import logger
from ..repositories.layer_repository import LayerRepository


class LayerService:
    """레이어 생성/저장을 처리하는 Service"""

    def __init__(self):
        self.repository = LayerRepository()

    @staticmethod
    def build(cfg: GenConfig) -> Layer:
        return layer_family(cfg.family, **cfg.family_params())(cfg.n)

    def generate(self, cfg: GenConfig) -> dict:
        """레이어 생성 → 파일 저장 → 요약 보고"""
        layer = self.build(cfg)
        path = self.repository.save(layer, cfg.layer_out)
        report = {
            "d": layer.d,
            "n": layer.n,
            "l_n": layer.size,
            "family": cfg.family,
            "params": cfg.family_params(),
            "sum_tau": fsum(layer.weights),
            "layer_path": path,
        }
        if cfg.geometry:
            resolution = cfg.grid_resolution or max(16, 4 * (cfg.n + 1))
            report["geometry"] = layer_geometry(layer, resolution)
            report["geometry"]["grid_resolution"] = resolution
        logger.info("layer generated | family=%s n=%d l_n=%d", cfg.family, layer.n, layer.size)
        return report
