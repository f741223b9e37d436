"""
설정 관리
로깅, 환경 변수(.env) 기반 수치 설정 초기화
"""
from typing import Optional

import os
import logging
from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load .env file
load_dotenv()

LOGGER_NAME = "mzsphere"

# 수치 설정 싱글톤 (지연 초기화 - 테스트에서 환경 변수 교체 후 reset 가능)
_settings: "Settings | None" = None


class Settings(BaseModel):
    """환경 변수에서 해석된 실행 설정"""
    log_level: str = Field("INFO", description="로거 레벨")
    threads: int = Field(1, description="격자/스윕 병렬 워커 수", ge=1, le=256)
    rank_tol: float = Field(1e-10, description="QR 랭크 판정 허용오차", gt=0, lt=1)
    eig_tol: float = Field(1e-9, description="극단 고유값 상대 허용오차", gt=0, lt=1)
    output_dir: str = Field(".", description="산출물 기본 디렉터리")


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError:
        logging.getLogger(LOGGER_NAME).warning(
            "Invalid %s=%r; falling back to %g", name, raw, default
        )
        return default


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logging.getLogger(LOGGER_NAME).warning(
            "Invalid %s=%r; falling back to %d", name, raw, default
        )
        return default


def get_settings() -> Settings:
    """Settings 싱글톤 반환 (처음 호출 시 환경 변수에서 초기화)."""
    global _settings
    if _settings is None:
        _settings = Settings(
            log_level=os.environ.get("LOG_LEVEL", "INFO").upper(),
            threads=max(1, _env_int("MZSPHERE_THREADS", 1)),
            rank_tol=_env_float("MZSPHERE_RANK_TOL", 1e-10),
            eig_tol=_env_float("MZSPHERE_EIG_TOL", 1e-9),
            output_dir=os.environ.get("MZSPHERE_OUTPUT_DIR", "."),
        )
    return _settings


def reset_settings(overrides: Optional[dict] = None) -> Settings:
    """싱글톤을 다시 만든다. overrides는 CLI 플래그(--rank-tol 등)용."""
    global _settings
    _settings = None
    current = get_settings()
    if overrides:
        clean = {k: v for k, v in overrides.items() if v is not None}
        _settings = current.model_copy(update=clean)
    return get_settings()


def setup_logging() -> logging.Logger:
    """로깅 설정"""
    logger = logging.getLogger(LOGGER_NAME)
    level = getattr(logging, os.environ.get("LOG_LEVEL", "INFO").upper(), logging.INFO)
    logger.setLevel(level)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
        logger.addHandler(handler)
    logger.propagate = True
    return logger
