"""Odd points of line sets in PG(2,q): exact values, bounds, constructions and searches."""

__version__ = "0.1.0"

__all__ = ["__version__"]
