"""Spin structure, systematic shifts and cooling dynamics of H2+ and anti-H2+ in a Penning trap."""

from .coefficients import (
    CoefficientTable, LevelCoefficients, Species, SpinState, charge_conjugate,
    load_coefficients, sign_factors, state,
)
from .constants import CONST, PhysicalConstants

__version__ = "0.1.0"
