"""
Base Repository - 공통 유틸리티 및 상수
텍스트 파일 포맷 공통 처리: 17자리 실수 표기, 원자적 쓰기, 읽기 캐시
"""

import os
import logging
import tempfile
from cachetools import LRUCache
from typing import Iterable, List, Optional, Sequence, Tuple

from ..errors import LayerFormatError

# Logger
logger = logging.getLogger("mzsphere")
level = getattr(logging, os.environ.get("LOG_LEVEL", "INFO").upper(), logging.INFO)
logger.setLevel(level)
if not logger.handlers:
    handler = logging.StreamHandler()
    handler.setFormatter(
        logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    )
    logger.addHandler(handler)
logger.propagate = True

# (경로, mtime, 크기) → 파싱 결과. 스윕 중 같은 파일을 반복해서 읽을 때 사용
read_cache = LRUCache(maxsize=64)

FLOAT_FORMAT = "%.17g"
COMMENT_PREFIX = "#"


class BaseFileRepository:
    """파일 포맷 Repository 공통 기능"""

    @staticmethod
    def format_float(value: float) -> str:
        """왕복 손실 없는 17 유효숫자 표기"""
        return FLOAT_FORMAT % float(value)

    @classmethod
    def format_row(cls, values: Iterable[float]) -> str:
        return " ".join(cls.format_float(v) for v in values)

    @staticmethod
    def atomic_write_text(path: str, text: str) -> str:
        """임시 파일에 쓴 뒤 os.replace 로 교체한다."""
        target = os.path.abspath(path)
        directory = os.path.dirname(target) or "."
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.debug("file written | path=%s bytes=%d", target, len(text))
        return target

    @staticmethod
    def cache_key(path: str) -> Tuple[str, int, int]:
        st = os.stat(path)
        return (os.path.abspath(path), st.st_mtime_ns, st.st_size)

    @staticmethod
    def read_lines(path: str) -> Tuple[List[str], List[str]]:
        """(주석 줄, 데이터 줄). 빈 줄은 버린다."""
        comments: List[str] = []
        data: List[str] = []
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line:
                    continue
                if line.startswith(COMMENT_PREFIX):
                    comments.append(line[len(COMMENT_PREFIX):].strip())
                else:
                    data.append(line)
        return comments, data

    @staticmethod
    def parse_ints(line: str, count: int, path: str, what: str) -> List[int]:
        parts = line.split()
        if len(parts) != count:
            raise LayerFormatError(
                f"{what} header must have {count} integers",
                path=path,
                got=line,
            )
        try:
            return [int(p) for p in parts]
        except ValueError as e:
            raise LayerFormatError(f"{what} header is not integral", path=path, got=line) from e

    @staticmethod
    def parse_floats(line: str, count: Optional[int], path: str, row: int) -> List[float]:
        parts = line.split()
        if count is not None and len(parts) != count:
            raise LayerFormatError(
                f"expected {count} columns",
                path=path,
                row=row,
                got=len(parts),
            )
        try:
            return [float(p) for p in parts]
        except ValueError as e:
            raise LayerFormatError("non-numeric entry", path=path, row=row) from e

    @classmethod
    def read_matrix(cls, path: str, columns: int) -> List[List[float]]:
        """주석을 제외한 모든 줄을 columns 열 실수 행렬로 읽는다 (헤더 없음)."""
        _, data = cls.read_lines(path)
        return [cls.parse_floats(line, columns, path, i + 1) for i, line in enumerate(data)]

    @classmethod
    def write_matrix(cls, path: str, rows: Sequence[Sequence[float]], header: Optional[str] = None) -> str:
        lines = [header] if header else []
        lines.extend(cls.format_row(r) for r in rows)
        return cls.atomic_write_text(path, "\n".join(lines) + "\n")
