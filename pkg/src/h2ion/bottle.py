"""Magnetic-bottle field and cancellation of the second-order Doppler shift.

With B_z = B0 + B2 (z^2 - r^2/2) a transition of field sensitivity beta sees
an extra shift beta B2 z^2 that grows with the axial amplitude, just as the
second-order Doppler shift does but with opposite sign for beta B2 > 0.  The
period-averaged sum can be made independent of the amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .coefficients import CoefficientTable
from .constants import CONST
from .systematics import TrapConfig, TransitionSpec, sensitivity_beta

DEFAULT_B2_CAP = 250e3  # T/m^2, realizable bottle strength


class NoCancellationError(ValueError):
    pass


@dataclass(frozen=True)
class BottleField:
    B0: float
    B2: float = 0.0
    z0: float = 0.0

    def __post_init__(self):
        if not self.B0 > 0:
            raise ValueError("B0 must be positive")


def bottle_field_axial(bottle: BottleField, z: float, r: float = 0.0) -> float:
    """Axial field component B0 + B2 (z^2 - r^2/2) in T."""
    return bottle.B0 + bottle.B2 * (z * z - 0.5 * r * r)


def bottle_field_radial(bottle: BottleField, z: float, r: float) -> float:
    return -bottle.B2 * z * r


@dataclass(frozen=True)
class MagicB2:
    B2: float
    realizable: bool
    note: str = ""


def magic_b2(beta: float, f_B0: float, nu_z: float) -> MagicB2:
    """B2 = (f/beta) (2 pi nu_z)^2 / (2 c^2) that removes the amplitude dependence.

    A negative result needs an inverted bottle and is flagged as not realizable.
    """
    if beta == 0.0:
        raise NoCancellationError("beta = 0: the bottle cannot compensate the Doppler shift")
    b2 = (f_B0 / beta) * (2 * math.pi * nu_z) ** 2 / (2 * CONST.light_speed**2)
    if b2 > 0:
        return MagicB2(b2, True)
    return MagicB2(b2, False, "negative B2 required; choose a component with beta > 0")


def axial_period_averaged_shift(bottle: BottleField, beta: float, f_B0: float, nu_z: float,
                                amplitude_A: float) -> float:
    """<f_tot> - f(B0) = beta B2 z0^2 + (A^2/2)(beta B2 - omega_z^2 f / (2 c^2))."""
    w2 = (2 * math.pi * nu_z) ** 2
    a_term = 0.5 * amplitude_A**2 * (beta * bottle.B2 - w2 * f_B0 / (2 * CONST.light_speed**2))
    return beta * bottle.B2 * bottle.z0**2 + a_term


@dataclass(frozen=True)
class RadialShift:
    shift: float
    magnetron_null_B2: float


def radial_period_averaged_shift(bottle: BottleField, beta: float, f_B0: float, nu_plus: float,
                                 nu_minus: float, v_plus_sq: float, v_minus_sq: float) -> RadialShift:
    """Secular average of the radial bottle term plus the radial Doppler shift."""
    if not (nu_plus > 0 and nu_minus > 0):
        raise ValueError("mode frequencies must be positive")
    c2 = CONST.light_speed**2
    wm2 = (2 * math.pi * nu_minus) ** 2
    wp2 = (2 * math.pi * nu_plus) ** 2
    shift = ((-beta * bottle.B2 / (2 * wm2) - f_B0 / (2 * c2)) * v_minus_sq
             + (-beta * bottle.B2 / (2 * wp2) - f_B0 / (2 * c2)) * v_plus_sq)
    null = -f_B0 * wm2 / (beta * c2) if beta else math.nan
    return RadialShift(shift, null)


def max_axial_frequency(beta: float, f_B0: float, cap: float = DEFAULT_B2_CAP) -> float:
    """Largest nu_z whose magic B2 stays below cap (beta f > 0 assumed)."""
    if beta == 0.0 or f_B0 / beta <= 0:
        return math.nan
    return math.sqrt(cap * 2 * CONST.light_speed**2 * beta / f_B0) / (2 * math.pi)


@dataclass
class CancellationReport:
    transition: str
    beta: float
    f0: float
    nu_z: float
    magic_B2: float
    feasible: bool
    cap: float
    max_nu_z: float
    radial_shift: float = math.nan
    radial_shift_without_bottle: float = math.nan
    notes: list = field(default_factory=list)

    def rows(self):
        for name in ("transition", "beta", "f0", "nu_z", "magic_B2", "feasible", "cap",
                     "max_nu_z", "radial_shift", "radial_shift_without_bottle"):
            yield name, getattr(self, name)
        for note in self.notes:
            yield "note", note


def cancellation_report(spec: TransitionSpec, table: CoefficientTable, trap: TrapConfig,
                        cap: float = DEFAULT_B2_CAP, beta: float | None = None,
                        mass: float = CONST.mass_H2plus) -> CancellationReport:
    """Magic B2, feasibility against cap and the radial penalty at the trap temperatures."""
    if not math.isfinite(spec.f0):
        raise ValueError("transition frequency f0 is required")
    if beta is None:
        beta = sensitivity_beta(spec, table, trap.B0)
    notes = []
    if beta == 0.0:
        return CancellationReport(str(spec), beta, spec.f0, trap.nu_z, math.nan, False, cap,
                                  math.nan, notes=["beta = 0: no cancellation possible"])
    magic = magic_b2(beta, spec.f0, trap.nu_z)
    if not magic.realizable:
        notes.append(magic.note)
    feasible = magic.realizable and magic.B2 <= cap
    report = CancellationReport(str(spec), beta, spec.f0, trap.nu_z, magic.B2, feasible, cap,
                                max_axial_frequency(beta, spec.f0, cap), notes=notes)
    if trap.nu_plus and trap.nu_minus:
        kt = CONST.boltzmann
        vp2 = 2 * kt * (trap.T_plus or 0.0) / mass
        vm2 = 2 * kt * trap.T_minus / mass
        bottle = BottleField(trap.B0, magic.B2)
        args = (beta, spec.f0, trap.nu_plus, trap.nu_minus, vp2, vm2)
        report.radial_shift = radial_period_averaged_shift(bottle, *args).shift
        report.radial_shift_without_bottle = radial_period_averaged_shift(
            BottleField(trap.B0), *args).shift
    return report
