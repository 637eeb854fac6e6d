"""Exact biclosed-set calculus for the rank-3 affine Weyl groups."""
from ._backend import BACKEND

__all__ = ["BACKEND"]
