"""Husimi, marginal and correlation distributions of Fock states in the
squeezed-states representation."""

__version__ = "0.1.0"
