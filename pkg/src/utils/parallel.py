"""
순서 보존 병렬 map
MZSPHERE_THREADS 개 스레드로 작업을 나누되 결과는 입력 순서대로 모은다.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import logging

from ..config.settings import get_settings

logger = logging.getLogger("mzsphere")

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """func 를 items 에 적용한 결과 리스트 (입력 순서 유지).

    numpy/LAPACK 연산은 GIL을 놓으므로 스레드로 충분하다.
    """
    work = list(items)
    workers = get_settings().threads if threads is None else threads
    workers = max(1, min(workers, len(work))) if work else 1
    if workers == 1:
        return [func(item) for item in work]
    logger.debug("parallel map | tasks=%d threads=%d", len(work), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, work))
