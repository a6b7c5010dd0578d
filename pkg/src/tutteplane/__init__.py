"""Exact Tutte-plane evaluation, shift calculus, hardness atlas and gadget reductions."""

__version__ = "0.1.0"
