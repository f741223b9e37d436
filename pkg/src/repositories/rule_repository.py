"""
Rule Repository - 구적 규칙 파일 (쓰기 전용)

포맷: 헤더 `d n l_n exactness_degree`, 이어서 `x1 x2 x3 w` 줄
"""
from ..numerics.quadrature import QuadratureRule
from .base import BaseFileRepository, logger


class RuleRepository(BaseFileRepository):

    def save(self, rule: QuadratureRule, path: str) -> str:
        layer = rule.layer
        lines = [f"{layer.d} {layer.n} {layer.size} {rule.exactness_degree}"]
        for x, w in zip(layer.points, rule.weights):
            lines.append(self.format_row((x[0], x[1], x[2], w)))
        target = self.atomic_write_text(path, "\n".join(lines) + "\n")
        logger.info(
            "rule saved | path=%s l_n=%d exactness_degree=%d",
            target, layer.size, rule.exactness_degree,
        )
        return target
