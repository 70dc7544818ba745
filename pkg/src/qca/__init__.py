"""Exact engine for the quantum cluster algebra of type A~(2n-1,1)."""
from .arcat import build_data, parse_obj
from .character import char_of, character, x_delta
from .torus import ScalarLaurent, SkewForm, TorusElement

__all__ = ["build_data", "parse_obj", "char_of", "character", "x_delta", "ScalarLaurent", "SkewForm", "TorusElement"]
__version__ = "0.1.0"
