"""
CLI Routes - 커맨드라인 진입점
Controller 패턴: 인자를 받아 핸들러(→ Service)를 호출하고 종료 코드를 정한다.

종료 코드: 0 성공, 2 입력 검증 실패, 3 수치 실패(MZ 결손/비수렴/selftest 실패), 4 파일 I/O 실패
"""
import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, TextIO

from pydantic import ValidationError

from ..config.settings import setup_logging
from ..errors import MZSphereError, NumericalError
from ..repositories.report_repository import ReportRepository
from ..services import FitService, LayerService, MZService, QuadratureService, SweepService
from ..utils.response_formatter import render_json
from .command_handlers import dispatch

logger = logging.getLogger("mzsphere")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = NumericalError.exit_code
EXIT_IO = 4


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rank-tol", dest="rank_tol", type=float, help="QR 랭크 허용오차 (MZSPHERE_RANK_TOL 재정의)")
    p.add_argument("--eig-tol", dest="eig_tol", type=float, help="극단 고유값 허용오차 (MZSPHERE_EIG_TOL 재정의)")
    p.add_argument("--output", help="JSON 보고서 경로 (생략 시 stdout)")


def _add_family(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=["gauss", "fibonacci", "perturbed"], default="gauss")
    p.add_argument("--oversampling", type=float, help="Fibonacci 배율 c")
    p.add_argument("--weight-scheme", dest="weight_scheme", choices=["uniform", "dim"])
    p.add_argument("--epsilon", type=float, help="섭동 크기 ε")
    p.add_argument("--seed", type=int, help="섭동 시드")


def _add_zonal(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=float, help="zonal 계수 감쇠 지수")
    p.add_argument("--pole", type=float, nargs=3, metavar=("X1", "X2", "X3"))
    p.add_argument("--l-max", dest="l_max", type=int, help="급수 절단 차수")


def _add_source(p: argparse.ArgumentParser, required: bool) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--function", choices=["zonal", "constant", "exp_z", "x3"])
    group.add_argument("--values", help="레이어 순서의 값 파일")
    _add_zonal(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzsphere",
        description="MZ 가중 최소제곱 근사 / 구적 / Sobolev 수렴 실험 워크벤치 (S²)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="레이어 파일 생성")
    _add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", dest="layer_out", help="레이어 파일 경로")
    p.add_argument("--geometry", action="store_true", default=None, help="mesh norm / separation 포함")
    p.add_argument("--grid-resolution", dest="grid_resolution", type=int)
    _add_common(p)

    p = sub.add_parser("mz", help="MZ 상수 인증")
    p.add_argument("--layer", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    _add_common(p)

    p = sub.add_parser("fit", help="가중 최소제곱 근사")
    p.add_argument("--layer", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--method", choices=["lsq", "hyper"])
    p.add_argument("--out", dest="approx_out", help="근사 계수 파일 경로")
    _add_source(p, required=True)
    _add_common(p)

    p = sub.add_parser("eval", help="근사 평가")
    p.add_argument("--approx", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--out", dest="values_out")
    _add_common(p)

    p = sub.add_parser("quad", help="최소제곱 구적 규칙")
    p.add_argument("--layer", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--out", dest="rule_out", help="구적 규칙 파일 경로")
    p.add_argument("--reference-degree", dest="reference_degree", type=int)
    _add_source(p, required=False)
    _add_common(p)

    p = sub.add_parser("lebesgue", help="Lebesgue 상수 성장 스윕")
    _add_family(p)
    p.add_argument("--n-list", dest="n_list", type=int, nargs="+", required=True)
    p.add_argument("--grid-resolution", dest="grid_resolution", type=int)
    p.add_argument("--refinements", type=int)
    _add_common(p)

    p = sub.add_parser("sweep", help="수렴 속도 스윕")
    _add_family(p)
    p.add_argument("--n-list", dest="n_list", type=int, nargs="+", required=True)
    _add_zonal(p)
    p.add_argument("--csv", dest="csv_out")
    p.add_argument("--with-lebesgue", dest="with_lebesgue", action="store_true", default=None)
    p.add_argument("--grid-resolution", dest="grid_resolution", type=int)
    _add_common(p)

    p = sub.add_parser("selftest", help="불변식 모음 실행")
    p.add_argument("--full", dest="quick", action="store_false", default=None, help="큰 차수까지 점검")
    _add_common(p)
    return parser


def build_services() -> Dict[str, object]:
    return {
        "layer": LayerService(),
        "mz": MZService(),
        "fit": FitService(),
        "quad": QuadratureService(),
        "sweep": SweepService(),
    }


def _emit_error(payload: dict, stream: TextIO) -> None:
    stream.write(json.dumps(payload, ensure_ascii=False, sort_keys=True, default=str) + "\n")


def run(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """argv 를 실행하고 종료 코드를 돌려준다."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 사용법 오류는 2, --help 는 0
        return int(e.code) if isinstance(e.code, int) else EXIT_VALIDATION

    setup_logging()
    arguments = {k: v for k, v in vars(args).items() if k != "command"}
    output = arguments.get("output")
    try:
        report = dispatch(args.command, arguments, build_services())
    except ValidationError as e:
        _emit_error({
            "error_code": "INVALID_INPUT",
            "error": "configuration validation failed",
            "details": [
                {"loc": ".".join(str(p) for p in err["loc"]), "msg": err["msg"]}
                for err in e.errors()
            ],
            "recovery_guide": "인자 값을 확인하세요 (mzsphere <command> --help).",
        }, stderr)
        return EXIT_VALIDATION
    except MZSphereError as e:
        logger.debug("command failed", exc_info=True)
        _emit_error(e.to_dict(), stderr)
        return e.exit_code
    except OverflowError as e:
        _emit_error({"error_code": "INVALID_INPUT", "error": str(e), "recovery_guide": "차수를 낮추세요."}, stderr)
        return EXIT_VALIDATION
    except OSError as e:
        logger.debug("I/O failure", exc_info=True)
        _emit_error({
            "error_code": "IO_ERROR",
            "error": f"{e.__class__.__name__}: {e}",
            "recovery_guide": "파일 경로와 권한을 확인하세요.",
        }, stderr)
        return EXIT_IO

    try:
        if output:
            ReportRepository().save_json(report, output)
        else:
            stdout.write(render_json(report) + "\n")
    except OSError as e:
        _emit_error({"error_code": "IO_ERROR", "error": str(e), "recovery_guide": "출력 경로를 확인하세요."}, stderr)
        return EXIT_IO

    if report.get("error_code"):
        return EXIT_VALIDATION
    if args.command == "selftest" and report.get("status") != "ok":
        return EXIT_NUMERICAL
    return EXIT_OK
