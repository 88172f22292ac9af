"""Numerical verification of harmonic-analysis identities on compact groups.

Desk-scale (SU(2), SU(3), tori) evaluation of half-form densities, Weyl
characters, orbital averages, chamber quadrature, matrix Fourier analysis,
the norm constants tying the compact and holomorphic Hilbert spaces
together, the pairing transforms, and the heat multiplier, with every
identity backed by an independent oracle.
"""

from .chars import CartanPoint, ClosedFormA1, WallSingularityError
from .fourier import FourierSeries
from .hilbert import ConstantsRow, IntegralRoute
from .models import Estimate, GroupModel, IrrepMatrices, MonteCarlo, build_group_model
from .quadrature import ChamberQuadrature, GridA1
from .rootdata import RootSystem, Weight, build_root_system, enumerate_dominant, weight

__version__ = "0.1.0"

__all__ = [
    "CartanPoint",
    "ChamberQuadrature",
    "ClosedFormA1",
    "ConstantsRow",
    "Estimate",
    "FourierSeries",
    "GridA1",
    "GroupModel",
    "IntegralRoute",
    "IrrepMatrices",
    "MonteCarlo",
    "RootSystem",
    "WallSingularityError",
    "Weight",
    "__version__",
    "build_group_model",
    "build_root_system",
    "enumerate_dominant",
    "weight",
]
