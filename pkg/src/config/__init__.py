"""Config - 설정 관리"""
from .settings import LOGGER_NAME, Settings, get_settings, reset_settings, setup_logging

__all__ = ["LOGGER_NAME", "Settings", "get_settings", "reset_settings", "setup_logging"]
