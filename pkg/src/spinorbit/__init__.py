"""Spin-orbit two-qubit circuit simulation and correlation analysis."""

__version__ = "0.1.0"
