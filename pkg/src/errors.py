"""
예외 계층
모든 실패는 error_code / recovery_guide / exit_code 를 가진다.
CLI는 to_dict() 결과를 그대로 JSON으로 출력한다.
"""
from typing import Any, Dict, Optional


class MZSphereError(Exception):
    """mzsphere 공통 예외"""

    error_code = "INTERNAL_ERROR"
    exit_code = 1
    default_guide = "서버 로그(LOG_LEVEL=DEBUG)를 확인하세요."

    def __init__(self, message: str, *, recovery_guide: Optional[str] = None, **context: Any):
        super().__init__(message)
        self.message = message
        self.recovery_guide = recovery_guide or self.default_guide
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "error_code": self.error_code,
            "error": self.message,
            "recovery_guide": self.recovery_guide,
        }
        out.update(self.context)
        return out


# ---------------------------------------------------------------------------
# 입력 검증 (exit 2)
# ---------------------------------------------------------------------------

class InputValidationError(MZSphereError):
    error_code = "INVALID_INPUT"
    exit_code = 2
    default_guide = "입력 파라미터를 확인하세요."


class DomainError(InputValidationError):
    """정의역 밖의 인자 (예: t ∉ [-1, 1], 단위벡터가 아닌 점)"""

    error_code = "DOMAIN_ERROR"


class DimensionMismatch(InputValidationError):
    error_code = "DIMENSION_MISMATCH"
    default_guide = "샘플 벡터 길이가 레이어 점 개수(l_n)와 같은지 확인하세요."


class UnsupportedDimension(InputValidationError):
    error_code = "UNSUPPORTED_DIMENSION"
    default_guide = "샘플 기반 파이프라인은 d=2 (S² ⊂ R³)만 지원합니다."


class LayerFormatError(InputValidationError):
    error_code = "FORMAT_ERROR"
    default_guide = "파일 헤더와 각 행의 열 개수를 확인하세요."


# ---------------------------------------------------------------------------
# 수치 실패 (exit 3)
# ---------------------------------------------------------------------------

class NumericalError(MZSphereError):
    error_code = "NUMERICAL_ERROR"
    exit_code = 3


class RankDeficient(NumericalError):
    """삼각 인수의 대각 성분이 rank_tol 아래로 떨어짐"""

    error_code = "RANK_DEFICIENT"
    default_guide = "점 개수를 늘리거나(oversampling ↑) 차수 n을 낮추세요."

    def __init__(self, message: str, *, index: int, **context: Any):
        super().__init__(message, index=index, **context)
        self.index = index


class MZDeficient(NumericalError):
    """하한 MZ 상수 A가 0으로 붕괴 (레이어가 Π_n을 결정하지 못함)"""

    error_code = "MZ_DEFICIENT"
    default_guide = "l_n ≥ d_n 인지, 점이 중복되지 않았는지 확인하세요."


class NonConvergence(NumericalError):
    error_code = "NON_CONVERGENCE"
    default_guide = "MZSPHERE_EIG_TOL 을 완화하거나 반복 상한을 늘리세요."


class InvariantViolation(NumericalError):
    """측정값이 반드시 성립해야 할 부등식을 깨뜨림"""

    error_code = "INVARIANT_VIOLATION"
    default_guide = "LOG_LEVEL=DEBUG 로 다시 실행해 해당 차수의 측정값을 확인하세요."
