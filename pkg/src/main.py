#!/usr/bin/env python3
"""
MZ 가중 최소제곱 근사 워크벤치 (S²)

레이어드 아키텍처 적용:
- Routes → Services → Repositories
- 수치 알고리즘은 numerics 패키지에 둔다

실행: python -m src.main <command> [options]  또는  mzsphere <command> [options]
"""
import sys
from typing import List, Optional

from .routes.cli_routes import run


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
