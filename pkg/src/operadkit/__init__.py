"""Combinatorial models of little-cube operads and their homology checks."""

__version__ = "0.1.0"
