"""Exact computation of ninth-variation supersymmetric skew Schur functions."""

__version__ = "0.1.0"
