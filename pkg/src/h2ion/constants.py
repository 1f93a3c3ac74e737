"""CODATA-2018 constants in SI units.

Values are pinned here instead of being pulled from scipy.constants so that
results do not depend on the installed scipy release.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    bohr_magneton: float = 9.2740100783e-24
    nuclear_magneton: float = 5.0507837461e-27
    boltzmann: float = 1.380649e-23
    planck: float = 6.62607015e-34
    reduced_planck: float = 6.62607015e-34 / (2.0 * math.pi)
    light_speed: float = 299792458.0
    elementary_charge: float = 1.602176634e-19
    bohr_radius: float = 5.29177210903e-11
    vacuum_permittivity: float = 8.8541878128e-12
    vacuum_permeability: float = 1.25663706212e-6
    fine_structure: float = 7.2973525693e-3
    atomic_mass_unit: float = 1.66053906660e-27
    electron_g_free: float = -2.00231930436256
    proton_g_bare: float = 5.5856946893
    proton_mass: float = 1.67262192369e-27
    electron_mass: float = 9.1093837015e-31
    mass_H2plus: float = 2 * 1.67262192369e-27 + 9.1093837015e-31
    # 9Be atomic mass 9.0121830622 u, one electron removed
    mass_Be9plus: float = 9.0121830622 * 1.66053906660e-27 - 9.1093837015e-31

    @property
    def polarizability_au(self) -> float:
        """SI value (C m^2 / V) of one atomic unit of polarizability."""
        return 4.0 * math.pi * self.vacuum_permittivity * self.bohr_radius**3

    @property
    def electron_mass_ratio(self) -> float:
        return self.electron_mass / self.proton_mass


CONST = PhysicalConstants()
