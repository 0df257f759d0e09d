"""Bound states of diatomic molecules on (anti-)de Sitter backgrounds.

The package computes spectra, radial eigenfunctions, and critical
deformation strengths for the pseudoharmonic and Kratzer interactions
under an extended-uncertainty-principle deformation, and cross-checks
every closed formula against an independent finite-difference solver.
"""

__version__ = "0.1.0"
