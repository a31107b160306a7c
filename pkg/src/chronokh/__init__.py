"""Chronological (odd/even unified) Khovanov homology of link diagrams."""

__version__ = "0.1.0"
