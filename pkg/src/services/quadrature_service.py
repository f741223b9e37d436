"""
Quadrature Service - 최소제곱 구적 규칙 생성/인증/적분
"""
import numpy as np

from ..models import QuadConfig
from ..numerics.mz_analysis import build_design
from ..numerics.quadrature import (
    certify_rule,
    integrate,
    kernel_route_weights,
    lsq_weights,
    quadrature_error,
    reference_integral,
)
from ..numerics.sobolev_lab import ZonalTestFunction
from ..repositories.layer_repository import LayerRepository
from ..repositories.report_repository import ReportRepository
from ..repositories.rule_repository import RuleRepository
from ..utils.sample_sources import KNOWN_INTEGRALS
from .fit_service import REFERENCE_MARGIN, load_samples


class QuadratureService:
    """구적 규칙 관련 비즈니스 로직을 처리하는 Service"""

    def __init__(self):
        self.layers = LayerRepository()
        self.rules = RuleRepository()
        self.reports = ReportRepository()

    def build(self, cfg: QuadConfig) -> dict:
        layer = self.layers.load(cfg.layer)
        n = layer.n if cfg.n is None else cfg.n
        sys = build_design(layer, n)
        rule = lsq_weights(sys)
        report = certify_rule(rule, sys)
        report["d"] = layer.d
        report["kernel_route_deviation"] = float(np.max(np.abs(rule.weights - kernel_route_weights(sys))))
        if cfg.rule_out:
            report["rule_path"] = self.rules.save(rule, cfg.rule_out)
        if cfg.function is None and cfg.values is None:
            return report

        samples, source = load_samples(cfg, layer, self.reports)
        report["I_n"] = integrate(rule, samples)
        if source is None:
            return report
        if isinstance(source, ZonalTestFunction):
            ref = cfg.reference_degree or 2 * max(n, source.l_max)
        else:
            ref = cfg.reference_degree or 2 * n + REFERENCE_MARGIN
        err_quad, err_l2 = quadrature_error(sys, source, ref)
        report.update({
            "reference_degree": ref,
            "err_quad": err_quad,
            "err_l2": err_l2,
        })
        if cfg.function in KNOWN_INTEGRALS:
            report["exact_integral"] = KNOWN_INTEGRALS[cfg.function]
            report["reference_integral"] = reference_integral(source, ref)
        return report
