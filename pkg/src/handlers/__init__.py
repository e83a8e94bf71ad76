"""
Модуль обработчиков команд.
"""

from src.handlers.commands import build_parser, main

__all__ = ["build_parser", "main"]
