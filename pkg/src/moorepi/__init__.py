"""Homotopy groups of mod 2^r Moore spaces from a curated fact base."""

__version__ = "0.1.0"
