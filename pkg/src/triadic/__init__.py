"""Triadic analysis of affiliation (two-mode) networks."""

__version__ = "0.1.0"
