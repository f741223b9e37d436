"""
응답 포맷터 - 서비스 결과(report dict)를 결정적 JSON 으로 변환
모든 실수는 17 유효숫자, 키는 정렬, NaN/inf 는 null
"""
import json
import math
from typing import Any, Dict, Optional

import numpy as np

from ..config.settings import get_settings
from ..models.schemas import FORMAT_VERSION

FLOAT_FORMAT = "%.17g"


def sanitize_for_json(obj: Any) -> Any:
    """
    numpy 스칼라/배열, 튜플을 JSON 기본 타입으로 정리한다.
    유한하지 않은 실수는 None 으로 바꾼다.
    """
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, np.ndarray):
        return [sanitize_for_json(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): sanitize_for_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize_for_json(v) for v in obj]
    return obj


def format_number(value: float) -> str:
    text = FLOAT_FORMAT % value
    if all(ch not in text for ch in ".en"):
        text += ".0"
    return text


def _render(obj: Any, indent: int, depth: int) -> str:
    pad = " " * (indent * (depth + 1))
    end = " " * (indent * depth)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{_render(str(k), indent, depth + 1)}: {_render(obj[k], indent, depth + 1)}"
            for k in sorted(obj)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) or v is None for v in obj):
            return "[" + ", ".join(_render(v, indent, depth + 1) for v in obj) + "]"
        items = [pad + _render(v, indent, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot render {type(obj).__name__} as JSON")


def render_json(report: Dict[str, Any], indent: int = 2) -> str:
    """결정적 JSON 텍스트 (동일 입력 → 동일 바이트)"""
    return _render(sanitize_for_json(report), indent, 0)


def round_significant(value: float, digits: int = 6) -> float:
    """보고용 반올림 (κ 는 6 유효숫자)"""
    return float("%.*g" % (digits, value))


def add_metadata(report: Dict[str, Any], command: str, config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    보고서에 메타데이터 추가

    Args:
        report: 서비스 결과
        command: 서브커맨드 이름
        config: 검증이 끝난 실행 설정 (model_dump 결과)

    Returns:
        _meta 가 추가된 보고서
    """
    settings = get_settings()
    meta = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "config": dict(config or {}),
        "tolerances": {"rank_tol": settings.rank_tol, "eig_tol": settings.eig_tol},
        "response_type": "error" if "error_code" in report else command,
    }
    out = dict(report)
    out["_meta"] = meta
    return out
