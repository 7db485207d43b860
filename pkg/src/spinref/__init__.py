"""Spin stratification of p-refinements of GL(2n).

Classifies Iwahori and parahoric p-refinements into spin-parabolic strata,
computes exact symbolic Hecke eigenvalues and slopes, runs the
refinement-switching algorithm, and decides support of twisted local zeta
integrals.
"""

__version__ = "0.1.0"
