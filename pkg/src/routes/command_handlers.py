"""CLI 서브커맨드 핸들러 디스패처.

services dict 키:
    "layer"       - LayerService 인스턴스
    "mz"          - MZService 인스턴스
    "fit"         - FitService 인스턴스
    "quad"        - QuadratureService 인스턴스
    "sweep"       - SweepService 인스턴스
"""
import os
import logging

from ..config.settings import get_settings, reset_settings
from ..models import (
    EvalConfig,
    FitConfig,
    GenConfig,
    LebesgueConfig,
    MZConfig,
    QuadConfig,
    SelfTestConfig,
    SweepConfig,
    ZonalFunctionConfig,
)
from ..models.schemas import RunConfig
from ..services.selftest_service import SelfTestService
from ..utils.response_formatter import add_metadata

logger = logging.getLogger("mzsphere")

_ZONAL_KEYS = ("t", "pole", "l_max")


def _split_zonal(arguments: dict) -> dict:
    """평탄한 CLI 인자에서 zonal 파라미터를 묶어 낸다."""
    args = dict(arguments)
    zonal = {k: args.pop(k) for k in _ZONAL_KEYS if k in args}
    zonal = {k: v for k, v in zonal.items() if v is not None}
    args["zonal"] = ZonalFunctionConfig(**zonal)
    return args


def _clean(arguments: dict) -> dict:
    return {k: v for k, v in arguments.items() if v is not None}


def _apply_tolerances(cfg: RunConfig) -> None:
    reset_settings({"rank_tol": cfg.rank_tol, "eig_tol": cfg.eig_tol})


def _finish(cfg: RunConfig, report: dict) -> dict:
    return add_metadata(report, cfg.command, cfg.model_dump(mode="json"))


def _default_path(name: str) -> str:
    return os.path.join(get_settings().output_dir, name)


def handle_gen(arguments: dict, services: dict) -> dict:
    args = _clean(arguments)
    if "layer_out" not in args:
        args["layer_out"] = _default_path(f"layer_{args.get('family', 'gauss')}_n{args.get('n')}.txt")
    cfg = GenConfig(**args)
    _apply_tolerances(cfg)
    return _finish(cfg, services["layer"].generate(cfg))


def handle_mz(arguments: dict, services: dict) -> dict:
    cfg = MZConfig(**_clean(arguments))
    _apply_tolerances(cfg)
    return _finish(cfg, services["mz"].certify(cfg))


def handle_fit(arguments: dict, services: dict) -> dict:
    args = _split_zonal(_clean(arguments))
    if "approx_out" not in args:
        args["approx_out"] = _default_path("approximant.txt")
    cfg = FitConfig(**args)
    _apply_tolerances(cfg)
    return _finish(cfg, services["fit"].fit(cfg))


def handle_eval(arguments: dict, services: dict) -> dict:
    cfg = EvalConfig(**_clean(arguments))
    _apply_tolerances(cfg)
    return _finish(cfg, services["fit"].evaluate(cfg))


def handle_quad(arguments: dict, services: dict) -> dict:
    cfg = QuadConfig(**_split_zonal(_clean(arguments)))
    _apply_tolerances(cfg)
    return _finish(cfg, services["quad"].build(cfg))


def handle_lebesgue(arguments: dict, services: dict) -> dict:
    cfg = LebesgueConfig(**_clean(arguments))
    _apply_tolerances(cfg)
    return _finish(cfg, services["sweep"].lebesgue(cfg))


def handle_sweep(arguments: dict, services: dict) -> dict:
    cfg = SweepConfig(**_split_zonal(_clean(arguments)))
    _apply_tolerances(cfg)
    return _finish(cfg, services["sweep"].convergence(cfg))


def handle_selftest(arguments: dict, services: dict) -> dict:
    cfg = SelfTestConfig(**_clean(arguments))
    _apply_tolerances(cfg)
    return _finish(cfg, SelfTestService(quick=cfg.quick).run())


_DISPATCH_TABLE = {
    "gen": handle_gen,
    "mz": handle_mz,
    "fit": handle_fit,
    "eval": handle_eval,
    "quad": handle_quad,
    "lebesgue": handle_lebesgue,
    "sweep": handle_sweep,
    "selftest": handle_selftest,
}

COMMANDS = tuple(_DISPATCH_TABLE)


def dispatch(command: str, arguments: dict, services: dict) -> dict:
    """command 에 맞는 핸들러를 찾아 실행한다.

    미등록 커맨드면 {"error_code": "UNKNOWN_COMMAND", ...} 반환.
    """
    handler = _DISPATCH_TABLE.get(command)
    if handler is None:
        return {
            "error_code": "UNKNOWN_COMMAND",
            "error": f"Unknown command: {command}",
            "recovery_guide": f"사용 가능한 커맨드: {', '.join(COMMANDS)}",
        }
    logger.debug("dispatch | command=%s", command)
    return handler(dict(arguments, command=command), services)
