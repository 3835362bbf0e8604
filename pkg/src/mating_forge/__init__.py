"""Combinatorics and numerics of quadratic polynomial matings."""
from .angles import Angle

__version__ = "0.1.0"
__all__ = ["Angle", "__version__"]
