"""Semantic subtyping and type checking for a small functional language."""

from .core import Engine, EngineConfig
from .errors import SttError
from .session import Session
from .syntax import parse_expr, parse_program, parse_type, print_type

__all__ = ["Engine", "EngineConfig", "Session", "SttError",
           "parse_expr", "parse_program", "parse_type", "print_type"]
