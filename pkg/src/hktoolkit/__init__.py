"""Toolkit for standard bases, Hironaka-type division, staircase combinatorics and
embedded resolution of singularities over Q and F_p."""

__version__ = "0.1.0"
