"""Slice regular functions on non-axially-symmetric quaternionic domains."""

__version__ = "0.1.0"
