"""Frozen graph colourings: builders, certificates, reconfiguration, search."""

__version__ = "0.1.0"
