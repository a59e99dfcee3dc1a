"""Exact tools for multiple tilings of space by translates of a rational polytope."""

__version__ = "0.1.0"
