"""
Fit Service - 가중 최소제곱 근사와 평가
"""
from math import fsum, sqrt
from typing import Tuple

import numpy as np

from ..models import EvalConfig, FitConfig, SampleSourceConfig
from ..numerics.approximation import Approximant, fit, hyperinterpolate
from ..numerics.mz_analysis import build_design
from ..numerics.pointsets import Layer
from ..numerics.sobolev_lab import ZonalTestFunction, cubature_l2_error, lsq_error_exact
from ..repositories.approximant_repository import ApproximantRepository
from ..repositories.base import logger
from ..repositories.layer_repository import LayerRepository
from ..repositories.report_repository import ReportRepository
from ..utils.sample_sources import resolve_source

# 내장 (비다항) 함수 오차를 잴 때 기준 구적에 더하는 여유 차수
REFERENCE_MARGIN = 32


def load_samples(cfg: SampleSourceConfig, layer: Layer, reports: ReportRepository) -> Tuple[np.ndarray, object]:
    """(샘플 벡터, 소스 callable 또는 None)"""
    if cfg.values is not None:
        return reports.load_values(cfg.values, expected=layer.size), None
    source = resolve_source(cfg.function, cfg.zonal)
    return np.asarray(source(layer.points), dtype=float), source


class FitService:
    """근사 계산/평가를 처리하는 Service"""

    def __init__(self):
        self.layers = LayerRepository()
        self.approximants = ApproximantRepository()
        self.reports = ReportRepository()

    def fit(self, cfg: FitConfig) -> dict:
        layer = self.layers.load(cfg.layer)
        n = layer.n if cfg.n is None else cfg.n
        samples, source = load_samples(cfg, layer, self.reports)
        report = {"d": layer.d, "n": n, "l_n": layer.size, "method": cfg.method}
        if cfg.method == "hyper":
            approx = hyperinterpolate(layer, n, samples)
        else:
            sys = build_design(layer, n)
            approx = fit(sys, samples)
            report["kappa"] = sys.kappa
        resid = samples - approx.values(layer.points)
        report["discrete_residual"] = sqrt(fsum(layer.weights * resid * resid))
        report["norm"] = approx.norm()
        report["d_n"] = approx.spec.size
        if isinstance(source, ZonalTestFunction) and n < source.l_max:
            report["err_l2"] = lsq_error_exact(source, approx, n)
        elif source is not None:
            report["err_l2"] = cubature_l2_error(source, approx, 2 * n + REFERENCE_MARGIN)
        report["approx_path"] = self.approximants.save(approx, cfg.approx_out)
        logger.info("fit done | method=%s n=%d norm=%.6g", cfg.method, n, report["norm"])
        return report

    def evaluate(self, cfg: EvalConfig) -> dict:
        approx: Approximant = self.approximants.load(cfg.approx)
        points = self.reports.load_points(cfg.points)
        values = approx.values(points)
        report = {"d": approx.spec.d, "n": approx.n, "points": int(points.shape[0])}
        if cfg.values_out:
            report["values_path"] = self.reports.save_values(values, cfg.values_out)
        else:
            report["values"] = values
        return report
