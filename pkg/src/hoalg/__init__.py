"""Exact computations with the A(m) and L(m) operads and their free algebras."""

from .trees import INF

__all__ = ["INF"]
__version__ = "0.1.0"
