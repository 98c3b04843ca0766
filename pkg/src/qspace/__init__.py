"""Exact subspace combinatorics over finite fields: Gaussian binomials,
intersecting families of subspaces, simplex counts and covering numbers."""

from qspace.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
