"""Routes 레이어 - CLI 엔트리포인트"""
from .cli_routes import build_parser, run
from .command_handlers import COMMANDS, dispatch

__all__ = ["build_parser", "run", "COMMANDS", "dispatch"]
