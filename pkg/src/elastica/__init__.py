"""Numerical toolkit for planar and space elastica: elliptic-integral
constants, exact series brackets, elastica curve generators, bending-energy
functionals, the elastic flow, and Theta-network competitors."""

__version__ = "0.1.0"

from .elliptic import EllipticConstants, constants

__all__ = ["EllipticConstants", "constants", "__version__"]
