"""Exact rational computations with finite-dimensional Lie algebras."""

__version__ = "0.1.0"
