"""Exact verification of character-module computations for norm tori."""

__version__ = "0.1.0"
