"""Corrected energy-aware routing model: build, solve, check and export."""

__version__ = "1.0.0"
