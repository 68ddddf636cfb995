"""Exact computations for the spin Calogero-Sutherland model and its free-field limits.

Modules: scalars (rationals and Laurent polynomials in beta), finite
(N-particle Dunkl operators, Yangian and quantum determinant), fock
(multicomponent free fermions), fields and densities (formal distributions
and contour integrals), fermi and bose (pullbacks to Fock space and to
polysymmetric functions), harness and cli (suites and reports).
"""

__version__ = "0.1.0"
