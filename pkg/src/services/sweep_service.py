"""
Sweep Service - 수렴 속도 / Lebesgue 성장 스윕
"""
from ..models import LebesgueConfig, SweepConfig
from ..numerics.pointsets import layer_family
from ..numerics.sobolev_lab import convergence_sweep, lebesgue_sweep
from ..repositories.report_repository import ReportRepository
from ..utils.sample_sources import zonal_from_config


class SweepService:
    """스윕 실행과 CSV 산출물을 처리하는 Service"""

    def __init__(self):
        self.reports = ReportRepository()

    def convergence(self, cfg: SweepConfig) -> dict:
        family = layer_family(cfg.family, **cfg.family_params())
        f = zonal_from_config(cfg.zonal)
        result = convergence_sweep(
            family,
            f,
            cfg.n_list,
            family_tag=cfg.family,
            with_lebesgue=cfg.with_lebesgue,
            grid_resolution=cfg.grid_resolution,
        )
        report = result.to_dict()
        if cfg.csv_out:
            report["csv_path"] = self.reports.save_csv(report["rows"], cfg.csv_out)
        return report

    def lebesgue(self, cfg: LebesgueConfig) -> dict:
        family = layer_family(cfg.family, **cfg.family_params())
        return lebesgue_sweep(
            family,
            cfg.n_list,
            grid_resolution=cfg.grid_resolution,
            refinements=cfg.refinements,
            family_tag=cfg.family,
        )
