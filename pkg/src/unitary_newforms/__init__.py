"""Exact computations for newforms of U(2,1) over an unramified quadratic extension."""

from .arithmetic import PhaseExponent, QuadExtElem, QuadField, psi_E, psi_F, val_E, val_F
from .cosets import coset_reduce, hecke_reps, level_reps
from .group import GroupElem, Mat2, Subgroup, decompose_H, iwasawa_H, membership
from .newform import NewformParams, generate_c, supercuspidal_classify
from .ratfunc import L_E, RationalFn, gcd_generator
from .schwartz import LatticeFn, LatticeTerm, f_function, fourier_hat, fourier_star, phi_n, z_integral

__version__ = "0.1.0"

__all__ = [
    "PhaseExponent", "QuadExtElem", "QuadField", "psi_E", "psi_F", "val_E", "val_F",
    "coset_reduce", "hecke_reps", "level_reps",
    "GroupElem", "Mat2", "Subgroup", "decompose_H", "iwasawa_H", "membership",
    "NewformParams", "generate_c", "supercuspidal_classify",
    "L_E", "RationalFn", "gcd_generator",
    "LatticeFn", "LatticeTerm", "f_function", "fourier_hat", "fourier_star", "phi_n", "z_integral",
]
