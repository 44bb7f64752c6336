"""Dunkl-operator calculus and deformed Bessel functions of integer order."""

from ._summation import DomainError, Evaluation
from .classical import bessel_j, bessel_j_coeffs, bessel_j_poisson
from .deformed import Family, LaurentWindow, coeffs, generating_window
from .deformed import eval as evaluate
from .dunkl import DeformationParameter, deformed_factorial, deformed_integer, e_mu
from .hypergeom import HypergeometricSpec, pfq
from .quadrature import QuadratureRule, gauss_jacobi
from .series import PowerSeries

__all__ = [
    "DeformationParameter",
    "DomainError",
    "Evaluation",
    "Family",
    "HypergeometricSpec",
    "LaurentWindow",
    "PowerSeries",
    "QuadratureRule",
    "bessel_j",
    "bessel_j_coeffs",
    "bessel_j_poisson",
    "coeffs",
    "deformed_factorial",
    "deformed_integer",
    "e_mu",
    "evaluate",
    "gauss_jacobi",
    "generating_window",
    "pfq",
]
