"""Degeneracy analysis for Jacobians of y^2 = x^m - 1."""
__version__ = "0.1.0"
