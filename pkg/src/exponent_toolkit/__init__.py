"""Steenrod algebra Ext charts and exponent bounds for truncated spheres."""

__version__ = "0.1.0"
