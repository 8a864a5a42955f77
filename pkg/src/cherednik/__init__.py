"""Exact computation and verification engine for the harmonic analysis of
root systems: Dunkl-Cherednik operators, graded affine Hecke algebras,
nonsymmetric Jacobi polynomials, hypergeometric shift operators, and
Macdonald's p-adic spherical functions, all over exact scalar domains.
"""

from .rootdata import MultiplicityParam, RootDatum, build

__all__ = ["build", "RootDatum", "MultiplicityParam"]
__version__ = "0.1.0"
