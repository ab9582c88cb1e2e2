"""sliceforge: exact-arithmetic toolkit for Slodowy slices, Dynkin folding,
ADE singularities, local Hitchin-base models, and cyclic group cohomology."""

from . import dynkin, equivcoh, groebner, hitchin, liealg, linalg, poly, singularity
from .poly import MPoly, PolyError

__all__ = [
    "MPoly", "PolyError",
    "poly", "groebner", "linalg", "dynkin", "liealg",
    "singularity", "hitchin", "equivcoh",
]

__version__ = "0.1.0"
