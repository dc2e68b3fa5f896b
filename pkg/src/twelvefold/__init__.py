"""Exact-arithmetic substitution-tiling engine for a 12-fold quasiperiodic
tiling with inflation factor 1 + sqrt(3)."""

__version__ = "0.1.0"
