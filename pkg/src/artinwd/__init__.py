"""Invariants of Artin and Weil-Deligne representations over local fields,
and the global L-series data they assemble into over Q."""

__version__ = "0.1.0"
