"""Computational toolkit for higher morphisms of A-infinity algebras."""

__version__ = "0.1.0"
