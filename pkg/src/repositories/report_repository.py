"""
Report Repository - JSON/CSV 보고서, 값/점 파일
"""
import csv
import io
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..errors import LayerFormatError
from ..utils.response_formatter import render_json
from .base import BaseFileRepository, logger

SWEEP_COLUMNS = ("n", "l_n", "kappa", "err_l2", "err_Sn", "err_quad", "lebesgue")


class ReportRepository(BaseFileRepository):

    def save_json(self, report: Dict[str, Any], path: str) -> str:
        target = self.atomic_write_text(path, render_json(report) + "\n")
        logger.info("report saved | path=%s", target)
        return target

    def render_csv(self, rows: Sequence[Dict[str, Any]], columns: Sequence[str] = SWEEP_COLUMNS) -> str:
        """없는 값(갭, 미계산 열)은 빈 칸"""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            cells = []
            for col in columns:
                value = row.get(col)
                if value is None:
                    cells.append("")
                elif isinstance(value, (int, np.integer)) and not isinstance(value, bool):
                    cells.append(str(int(value)))
                else:
                    cells.append(self.format_float(value))
            writer.writerow(cells)
        return buf.getvalue()

    def save_csv(self, rows: Sequence[Dict[str, Any]], path: str, columns: Sequence[str] = SWEEP_COLUMNS) -> str:
        target = self.atomic_write_text(path, self.render_csv(rows, columns))
        logger.info("csv saved | path=%s rows=%d", target, len(rows))
        return target

    def load_values(self, path: str, expected: Optional[int] = None) -> np.ndarray:
        """한 줄에 값 하나"""
        values = np.array([row[0] for row in self.read_matrix(path, 1)], dtype=float)
        if expected is not None and values.shape[0] != expected:
            raise LayerFormatError(
                "values file length does not match the layer",
                path=path,
                expected=expected,
                got=int(values.shape[0]),
            )
        return values

    def save_values(self, values: Sequence[float], path: str) -> str:
        return self.write_matrix(path, [[v] for v in values])

    def load_points(self, path: str) -> np.ndarray:
        rows: List[List[float]] = self.read_matrix(path, 3)
        if not rows:
            raise LayerFormatError("points file is empty", path=path)
        return np.array(rows, dtype=float)
