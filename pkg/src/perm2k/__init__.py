"""Exact permanents and hafnians modulo 2^k over polynomial rings, and
the shortest disjoint cycle and path solvers built on them."""

from perm2k._kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
