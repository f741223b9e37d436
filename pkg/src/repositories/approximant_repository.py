"""
Approximant Repository - 근사 계수 파일

포맷: 헤더 `d n`, 이어서 d_n 개의 계수 (BasisSpec 순서, 17 유효숫자)
"""
import numpy as np

from ..errors import LayerFormatError
from ..numerics.approximation import Approximant
from ..numerics.core_math import BasisSpec
from .base import BaseFileRepository, logger


class ApproximantRepository(BaseFileRepository):

    def save(self, approx: Approximant, path: str) -> str:
        lines = [f"{approx.spec.d} {approx.n}"]
        lines.extend(self.format_float(c) for c in approx.coefficients)
        target = self.atomic_write_text(path, "\n".join(lines) + "\n")
        logger.info("approximant saved | path=%s n=%d d_n=%d", target, approx.n, approx.spec.size)
        return target

    def load(self, path: str) -> Approximant:
        _, data = self.read_lines(path)
        if not data:
            raise LayerFormatError("approximant file is empty", path=path)
        d, n = self.parse_ints(data[0], 2, path, "approximant")
        spec = BasisSpec(n=n, d=d)
        rows = data[1:]
        if len(rows) != spec.size:
            raise LayerFormatError(
                "coefficient count does not match dim Π_n",
                path=path,
                expected=spec.size,
                got=len(rows),
            )
        coeffs = np.array([self.parse_floats(line, 1, path, i + 2)[0] for i, line in enumerate(rows)])
        return Approximant(spec=spec, coefficients=coeffs)
