"""Superintegrable Coulomb-like quantum systems with spin 0, 1/2, and 1 in
any dimension: exact certification of their hidden Runge-Lenz symmetry,
closed-form spectra and eigenfunctions, and an independent finite-difference
eigenvalue oracle."""

from . import cliffalg, numsolve, opalg, radial, report, specfun

__version__ = "0.1.0"

__all__ = ["cliffalg", "numsolve", "opalg", "radial", "report", "specfun",
           "__version__"]
