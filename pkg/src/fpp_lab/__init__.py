"""Exact toolkit for hyperplanes of c and the weak-star fixed point property in l1."""

__version__ = "0.1.0"
