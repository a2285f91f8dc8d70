"""Exact-arithmetic workbench for quadratic modules, the complex of hyperbolic
embeddings, Cohen-Macaulay complexes and homological-stability bookkeeping."""

__version__ = "0.1.0"
