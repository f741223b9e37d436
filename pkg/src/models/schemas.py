"""
Pydantic 모델 정의
CLI 서브커맨드별 실행 설정(RunConfig)을 여기에 정의
"""
from pydantic import BaseModel, Field, field_validator, model_validator
from typing import Optional, Literal, List


FORMAT_VERSION = "mzsphere-report/1"

FamilyName = Literal["gauss", "fibonacci", "perturbed"]


class RunConfig(BaseModel):
    """모든 커맨드 공통 설정"""
    command: str = Field(..., description="서브커맨드 이름")
    d: Literal[2] = Field(2, description="구면 차원 (파이프라인은 S²만 지원)")
    rank_tol: Optional[float] = Field(None, description="랭크 허용오차 재정의 (없으면 환경 설정)", gt=0, lt=1)
    eig_tol: Optional[float] = Field(None, description="고유값 허용오차 재정의 (없으면 환경 설정)", gt=0, lt=1)
    output: Optional[str] = Field(None, description="JSON 보고서 경로 (없으면 stdout)")


class FamilyConfig(BaseModel):
    """레이어 계열과 그 파라미터"""
    family: FamilyName = Field("gauss", description="레이어 생성기: gauss, fibonacci, perturbed")
    oversampling: float = Field(2.0, description="Fibonacci 점 개수 배율 c (l_n = ⌈c(n+1)²⌉)", gt=0)
    weight_scheme: Literal["uniform", "dim"] = Field("uniform", description="Fibonacci 가중치: 1/l_n 또는 1/d_n")
    epsilon: float = Field(0.5, description="섭동 크기 ε (측지 길이 ≤ ε/(n+1))", ge=0)
    seed: int = Field(0, description="섭동 난수 시드", ge=0)

    def family_params(self) -> dict:
        if self.family == "fibonacci":
            return {"oversampling": self.oversampling, "weight_scheme": self.weight_scheme}
        if self.family == "perturbed":
            return {"epsilon": self.epsilon, "seed": self.seed}
        return {}


class ZonalFunctionConfig(BaseModel):
    """zonal 시험 함수 a_ℓ = (1+ℓ)^{-t}"""
    t: float = Field(3.0, description="계수 감쇠 지수 (d=2에서 > 1.5)", gt=1.5)
    pole: List[float] = Field([0.0, 0.0, 1.0], description="zonal 축 p (정규화해서 사용)")
    l_max: int = Field(128, description="급수 절단 차수 L_max", ge=1, le=4096)

    @field_validator("pole")
    @classmethod
    def _pole_shape(cls, v: List[float]) -> List[float]:
        if len(v) != 3 or sum(c * c for c in v) == 0.0:
            raise ValueError("pole must be a non-zero 3-vector")
        return v


class GenConfig(RunConfig, FamilyConfig):
    """gen: 레이어 파일 생성"""
    n: int = Field(..., description="레이어 차수 n", ge=0, le=512)
    layer_out: str = Field(..., description="생성할 레이어 파일 경로")
    geometry: bool = Field(False, description="mesh norm / separation 진단 포함 여부")
    grid_resolution: Optional[int] = Field(None, description="mesh norm 격자 해상도", ge=1)


class MZConfig(RunConfig):
    """mz: MZ 상수 인증"""
    layer: str = Field(..., description="레이어 파일 경로")
    n: Optional[int] = Field(None, description="피팅 차수 (없으면 레이어 차수)", ge=0)
    trials: int = Field(200, description="무작위 Rayleigh 몫 시행 수", ge=1, le=100000)
    seed: int = Field(0, description="시행 난수 시드", ge=0)


class SampleSourceConfig(BaseModel):
    """fit/quad 샘플 소스: 내장 함수 이름 또는 값 파일"""
    function: Optional[str] = Field(None, description="내장 함수: zonal, constant, exp_z, x3")
    values: Optional[str] = Field(None, description="레이어 점 순서와 맞춘 값 파일 경로")
    zonal: ZonalFunctionConfig = Field(default_factory=ZonalFunctionConfig, description="zonal 파라미터")

    @model_validator(mode="after")
    def _one_source(self):
        if (self.function is None) == (self.values is None):
            raise ValueError("exactly one of function / values is required")
        return self


class FitConfig(RunConfig, SampleSourceConfig):
    """fit: 가중 최소제곱 근사"""
    layer: str = Field(..., description="레이어 파일 경로")
    n: Optional[int] = Field(None, description="피팅 차수 (없으면 레이어 차수)", ge=0)
    approx_out: str = Field(..., description="근사 계수 파일 경로")
    method: Literal["lsq", "hyper"] = Field("lsq", description="lsq: L_n, hyper: hyperinterpolation H_n")


class EvalConfig(RunConfig):
    """eval: 근사 평가"""
    approx: str = Field(..., description="근사 계수 파일 경로")
    points: str = Field(..., description="평가점 파일 (각 행 x1 x2 x3)")
    values_out: Optional[str] = Field(None, description="평가값 출력 파일 (없으면 보고서에만 포함)")


class QuadConfig(RunConfig, SampleSourceConfig):
    """quad: 최소제곱 구적 규칙 생성/인증"""
    layer: str = Field(..., description="레이어 파일 경로")
    n: Optional[int] = Field(None, description="구적 정확도 차수 (없으면 레이어 차수)", ge=0)
    rule_out: Optional[str] = Field(None, description="구적 규칙 파일 경로")
    reference_degree: Optional[int] = Field(None, description="기준 구적 차수 (없으면 2·max(n, L_max))", ge=1)

    @model_validator(mode="after")
    def _one_source(self):
        # 샘플 소스 없이 규칙만 만들 수 있다
        if self.function is not None and self.values is not None:
            raise ValueError("use either function or values, not both")
        return self


class LebesgueConfig(RunConfig, FamilyConfig):
    """lebesgue: Lebesgue 상수 성장 스윕"""
    n_list: List[int] = Field(..., description="차수 목록", min_length=1)
    grid_resolution: Optional[int] = Field(None, description="평가 격자 해상도 (없으면 ≥ 40·d_n 노드)", ge=1)
    refinements: int = Field(3, description="격자 세분 횟수", ge=1, le=8)

    @field_validator("n_list")
    @classmethod
    def _non_negative(cls, v: List[int]) -> List[int]:
        if any(n < 0 for n in v):
            raise ValueError("degrees must be non-negative")
        return v


class SweepConfig(RunConfig, FamilyConfig):
    """sweep: 수렴 속도 스윕"""
    n_list: List[int] = Field(..., description="차수 목록", min_length=1)
    zonal: ZonalFunctionConfig = Field(default_factory=ZonalFunctionConfig, description="zonal 파라미터")
    csv_out: Optional[str] = Field(None, description="CSV 출력 경로")
    with_lebesgue: bool = Field(False, description="lebesgue 열 계산 여부")
    grid_resolution: Optional[int] = Field(None, description="Lebesgue 격자 해상도", ge=1)

    @model_validator(mode="after")
    def _fits_truncation(self):
        if any(n < 0 for n in self.n_list):
            raise ValueError("degrees must be non-negative")
        if 2 * max(self.n_list) > self.zonal.l_max:
            raise ValueError("max(n_list) must not exceed l_max/2")
        return self


class SelfTestConfig(RunConfig):
    """selftest: 불변식 모음 실행"""
    quick: bool = Field(True, description="작은 차수만 사용")
