"""
MZ Service - 레이어별 MZ 상수 인증
"""
from ..models import MZConfig
from ..numerics.mz_analysis import build_design, verify_mz, weight_sum_bounds
from ..repositories.layer_repository import LayerRepository
from ..utils.response_formatter import round_significant


class MZService:
    """MZ 상수(A, B, κ) 인증을 처리하는 Service"""

    def __init__(self):
        self.repository = LayerRepository()

    def certify(self, cfg: MZConfig) -> dict:
        layer = self.repository.load(cfg.layer)
        n = layer.n if cfg.n is None else cfg.n
        sys = build_design(layer, n)
        sum_tau, lower_ok, upper_ok = weight_sum_bounds(sys)
        check = verify_mz(sys, cfg.trials, cfg.seed)
        return {
            "d": layer.d,
            "n": n,
            "l_n": layer.size,
            "A": sys.a_est,
            "B": sys.b_est,
            "kappa": round_significant(sys.kappa, 6),
            "sum_tau": sum_tau,
            "rank_ok": not sys.factorization.rank_deficient,
            "sum_tau_lower_ok": lower_ok,
            "sum_tau_upper_ok": upper_ok,
            "verification": {
                "trials": check.trials,
                "min_quotient": check.min_quotient,
                "max_quotient": check.max_quotient,
                "contained": check.contained,
            },
        }
