"""
Layer Repository - 레이어 파일 읽기/쓰기

포맷:
    # provenance: {"generator": "gauss", "n": 8}   (선택)
    d n l_n
    x1 x2 x3 tau        (l_n 줄)
"""
import json

import numpy as np

from ..errors import LayerFormatError
from ..numerics.pointsets import Layer
from .base import BaseFileRepository, logger, read_cache

PROVENANCE_TAG = "provenance:"


class LayerRepository(BaseFileRepository):
    """샘플링 레이어 파일 Repository"""

    def save(self, layer: Layer, path: str) -> str:
        lines = []
        if layer.provenance:
            lines.append(f"# {PROVENANCE_TAG} {json.dumps(layer.provenance, sort_keys=True)}")
        lines.append(f"{layer.d} {layer.n} {layer.size}")
        for x, tau in zip(layer.points, layer.weights):
            lines.append(self.format_row((x[0], x[1], x[2], tau)))
        target = self.atomic_write_text(path, "\n".join(lines) + "\n")
        logger.info("layer saved | path=%s n=%d l_n=%d", target, layer.n, layer.size)
        return target

    def load(self, path: str) -> Layer:
        key = ("layer",) + self.cache_key(path)
        if key in read_cache:
            return read_cache[key]
        comments, data = self.read_lines(path)
        if not data:
            raise LayerFormatError("layer file is empty", path=path)
        d, n, count = self.parse_ints(data[0], 3, path, "layer")
        if d != 2:
            raise LayerFormatError(f"only d=2 layers are supported, got d={d}", path=path)
        rows = data[1:]
        if len(rows) != count:
            raise LayerFormatError(
                "point count does not match the header",
                path=path,
                expected=count,
                got=len(rows),
            )
        table = np.array(
            [self.parse_floats(line, 4, path, i + 2) for i, line in enumerate(rows)],
            dtype=float,
        ).reshape(count, 4)
        provenance = {}
        for c in comments:
            if c.startswith(PROVENANCE_TAG):
                try:
                    provenance = json.loads(c[len(PROVENANCE_TAG):])
                except json.JSONDecodeError:
                    logger.warning("unreadable provenance comment | path=%s", path)
        # Layer 생성자가 단위 노름(1e-12)과 양의 가중치를 검증한다
        layer = Layer(n=n, points=table[:, :3], weights=table[:, 3], provenance=provenance, d=d)
        read_cache[key] = layer
        return layer
