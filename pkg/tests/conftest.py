"""
테스트 공통 설정 및 픽스처

작은 차수(n ≤ 8)로 돌아가는 순수 수치 테스트가 기본.
큰 차수 수용 테스트는 MZSPHERE_RUN_SLOW=1 일 때만 실행.
"""
import os

import numpy as np
import pytest

from src.config.settings import reset_settings


# ---------------------------------------------------------------------------
# 설정 격리
# ---------------------------------------------------------------------------

@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """테스트마다 환경 변수 기반 설정을 새로 만든다."""
    for name in ("MZSPHERE_THREADS", "MZSPHERE_RANK_TOL", "MZSPHERE_EIG_TOL", "MZSPHERE_OUTPUT_DIR"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


# ---------------------------------------------------------------------------
# 샘플 데이터
# ---------------------------------------------------------------------------

@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=12345))


@pytest.fixture
def random_points(rng):
    def make(count: int) -> np.ndarray:
        g = rng.standard_normal((count, 3))
        return g / np.linalg.norm(g, axis=1, keepdims=True)
    return make


@pytest.fixture
def oblique_pole():
    p = np.array([0.3, -0.4, 0.866])
    return p / np.linalg.norm(p)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: 큰 차수 수용 테스트 (MZSPHERE_RUN_SLOW=1)"
    )


def pytest_collection_modifyitems(config, items):
    """slow: MZSPHERE_RUN_SLOW!=1 이면 스킵"""
    if os.environ.get("MZSPHERE_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="MZSPHERE_RUN_SLOW=1 일 때만 실행")
    for item in items:
        if "slow" in [m.name for m in item.iter_markers()]:
            item.add_marker(skip_slow)
