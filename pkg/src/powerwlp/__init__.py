"""Weak Lefschetz checks for ideals generated by powers of general linear forms."""

__version__ = "0.1.0"
