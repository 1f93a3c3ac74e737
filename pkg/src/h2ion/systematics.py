"""Systematic frequency shifts of individual spin components.

Every function returns a frequency in Hz (transition frequency shift, upper
minus lower level) unless stated otherwise.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .coefficients import (CoefficientTable, Species, SpinState, charge_conjugate,
                           sign_factors)
from .constants import CONST
from .spin import b_tilde_sq, build_diagonal_terms, para_levels

BBR_FRACTIONAL_BOUND = 1e-19


class TransitionError(ValueError):
    pass


class DependentComponentsError(ValueError):
    pass


@dataclass(frozen=True)
class TransitionSpec:
    lower: SpinState
    upper: SpinState
    f0: float = float("nan")

    def __post_init__(self):
        if self.lower.species != self.upper.species:
            raise TransitionError("lower and upper state belong to different species")
        lo, up = self.lower, self.upper
        if self.is_esr:
            if abs(up.M_s - lo.M_s) != 1 or up.M_N != lo.M_N:
                raise TransitionError("ESR transitions flip M_s at fixed M_N")
            return
        if up.M_s != lo.M_s:
            raise TransitionError("optical transitions conserve M_s")
        if abs(up.N - lo.N) not in (0, 2) or (lo.N == 0 and up.N == 0):
            raise TransitionError(f"N = {lo.N} -> {up.N} violates the E2 rule")
        if abs(up.M_N - lo.M_N) > 2:
            raise TransitionError("|Delta M_N| exceeds 2")

    @property
    def is_esr(self) -> bool:
        return self.lower.level == self.upper.level

    @property
    def species(self) -> Species:
        return self.lower.species

    def conjugate(self) -> "TransitionSpec":
        return TransitionSpec(charge_conjugate(self.lower), charge_conjugate(self.upper), self.f0)

    def __str__(self) -> str:
        return f"{self.lower} -> {self.upper}"


@dataclass(frozen=True)
class TrapConfig:
    B0: float
    B2: float = 0.0
    nu_z: float = 0.0
    nu_plus: float | None = None
    nu_minus: float | None = None
    T_z: float = 0.0
    T_plus: float | None = None
    T_minus: float = 0.0
    r_orbital: float | None = None
    environment_temperature: float = 4.2

    def __post_init__(self):
        if not self.B0 > 0:
            raise ValueError("B0 must be positive")
        for name in ("T_z", "T_plus", "T_minus"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.nu_plus and self.nu_minus and self.nu_z:
            if not self.nu_minus < self.nu_z < self.nu_plus:
                raise ValueError("require nu_minus < nu_z < nu_plus")


@dataclass
class ShiftBudget:
    items: list = field(default_factory=list)
    f0: float = float("nan")

    def add(self, name: str, value: float, note: str = "") -> None:
        self.items.append((name, value, value / self.f0 if self.f0 else float("nan"), note))

    @property
    def total(self) -> float:
        return math.fsum(v for _, v, _, _ in self.items)

    def as_dict(self) -> dict:
        return {name: value for name, value, _, _ in self.items}

    def rows(self):
        yield from self.items
        yield ("total", self.total, self.total / self.f0 if self.f0 else float("nan"), "")


def _energy(s: SpinState, table: CoefficientTable, B: float, **fields) -> float:
    coeffs = table[s.level]
    diag = build_diagonal_terms(coeffs, B, species=s.species, **fields)
    for lv in para_levels(coeffs, B, diag, s.species):
        if lv.label == s:
            return lv.energy + diag.xi
    raise TransitionError(f"state {s} not found")


def rotational_zeeman_shift(spec: TransitionSpec, table: CoefficientTable, B: float) -> float:
    _, s_n = sign_factors(spec.species)
    gr_lo = table[spec.lower.level].g_r
    gr_up = table[spec.upper.level].g_r
    return -s_n * CONST.nuclear_magneton * (spec.upper.M_N * gr_up - spec.lower.M_N * gr_lo) * B / CONST.planck


def _dia_energy(s: SpinState, table: CoefficientTable, B: float) -> tuple[float, float]:
    c = table[s.level]
    scale = -0.5 * CONST.fine_structure**2 * b_tilde_sq(B) / CONST.planck
    scalar = scale * c.require("chi_s")
    chi_t = c.require("chi_t") if s.N else 0.0
    tensor = scale * chi_t * (s.M_N**2 - s.N * (s.N + 1) / 3.0)
    return scalar, tensor


def diamagnetic_shift(spec: TransitionSpec, table: CoefficientTable, B: float) -> tuple[float, float]:
    """(scalar, tensor) dia- plus paramagnetic shift of the transition."""
    s_lo, t_lo = _dia_energy(spec.lower, table, B)
    s_up, t_up = _dia_energy(spec.upper, table, B)
    return s_up - s_lo, t_up - t_lo


def _stark_energy(s: SpinState, table: CoefficientTable, ez2: float, ep2: float,
                  kind: str = "dc") -> float:
    c = table[s.level]
    au = CONST.polarizability_au / CONST.planck
    a_s = c.require(f"alpha_s_{kind}") * au
    a_t = (c.require(f"alpha_t_{kind}") if s.N else 0.0) * au
    e_tilde2 = ez2 - 0.5 * ep2
    return -0.5 * a_s * (ez2 + ep2) - 0.5 * a_t * e_tilde2 * (2 * s.M_N**2 - 2.0 / 3.0 * s.N * (s.N + 1))


def axial_field_sq(mass: float, charge: float, T_z: float, nu_z: float) -> float:
    """Mean squared axial electric field <E_z^2> for axial temperature T_z."""
    return CONST.boltzmann * T_z * mass / charge**2 * (2 * math.pi * nu_z) ** 2


def motional_field_sq(mass: float, charge: float, B: float, r_orbital: float | None = None,
                      T_r: float | None = None) -> float:
    """Squared motional electric field from an orbit radius or a radial temperature."""
    if r_orbital is not None:
        return (abs(charge) / mass * B * B * r_orbital) ** 2
    if T_r is not None:
        return CONST.boltzmann * T_r * B * B / mass
    raise ValueError("dc Stark shift needs r_orbital or T_plus")


def dc_stark_shift(spec: TransitionSpec, table: CoefficientTable, trap: TrapConfig,
                   mass: float = CONST.mass_H2plus,
                   charge: float = CONST.elementary_charge) -> float:
    """Axial thermal field plus motional radial field, scalar and tensor terms.

    The radial field uses r_orbital when given, otherwise the thermal form with T_plus.
    """
    ez2 = axial_field_sq(mass, charge, trap.T_z, trap.nu_z) if trap.nu_z else 0.0
    ep2 = motional_field_sq(mass, charge, trap.B0, trap.r_orbital, trap.T_plus)
    return (_stark_energy(spec.upper, table, ez2, ep2)
            - _stark_energy(spec.lower, table, ez2, ep2))


def ac_stark_shift(spec: TransitionSpec, table: CoefficientTable, intensity: float) -> float:
    """Light shift for a laser field polarized along B."""
    if intensity < 0:
        raise ValueError("intensity must be non-negative")
    f2 = 2.0 * intensity / (CONST.vacuum_permittivity * CONST.light_speed)
    # polarization along z: E_z^2 = F^2, no transverse part
    return (_stark_energy(spec.upper, table, f2, 0.0, "ac")
            - _stark_energy(spec.lower, table, f2, 0.0, "ac"))


def field_gradient(nu_z: float, mass: float, charge: float) -> float:
    """Axial field-gradient magnitude V_zz = m omega_z^2 / |q| in V/m^2."""
    return mass * (2 * math.pi * nu_z) ** 2 / abs(charge)


def _eqs_energy(s: SpinState, table: CoefficientTable, v_zz: float) -> float:
    if s.N == 0:
        return 0.0
    e14 = table[s.level].require("e14") * 1e-3  # MHz m^2/GV -> Hz m^2/V
    return 1.5**1.5 * e14 * v_zz * (s.M_N**2 - s.N * (s.N + 1) / 3.0)


def eqs_shift(spec: TransitionSpec, table: CoefficientTable, nu_z: float,
              mass: float = CONST.mass_H2plus, charge: float = CONST.elementary_charge) -> float:
    """Electric-quadrupole shift; E14 and V_zz flip together under C."""
    if nu_z <= 0:
        raise ValueError("nu_z must be positive")
    v_zz = field_gradient(nu_z, mass, charge)
    return _eqs_energy(spec.upper, table, v_zz) - _eqs_energy(spec.lower, table, v_zz)


def qds_mean(mass: float, temperatures, f0: float) -> float:
    """Mean second-order Doppler shift for thermal mode temperatures."""
    total = math.fsum(temperatures)
    if any(t < 0 for t in temperatures):
        raise ValueError("temperatures must be non-negative")
    return -f0 * CONST.boltzmann * total / (2 * mass * CONST.light_speed**2)


def qds_quantum(mass: float, n_plus: float, nu_plus: float, f0: float) -> float:
    """Second-order Doppler shift of a cyclotron mode with occupation n_plus.

    Uses <v^2> = (n + 1/2) hbar omega_+ / m, so n_plus = 0 gives the zero-point value.
    """
    if n_plus < 0:
        raise ValueError("n_plus must be non-negative")
    return -(n_plus + 0.5) * CONST.planck * nu_plus * f0 / (2 * mass * CONST.light_speed**2)


def spin_rotation_offset(s: SpinState, table: CoefficientTable) -> float:
    """Field-independent diagonal spin-rotation energy c_e M_s M_N."""
    return table[s.level].c_e * float(s.M_s) * s.M_N


def total_magnetic_shift(spec: TransitionSpec, table: CoefficientTable, B: float) -> float:
    """Field-dependent part of the transition frequency (Stark and EQS excluded).

    Exact upper-minus-lower energy with the diagonal spin-rotation energies
    c_e M_s M_N of both levels removed, so that only field-induced terms and
    the c_e^2/B mixing remain.  Sensitivity tables quote shifts in this
    convention.
    """
    e_up = _energy(spec.upper, table, B) - spin_rotation_offset(spec.upper, table)
    e_lo = _energy(spec.lower, table, B) - spin_rotation_offset(spec.lower, table)
    return e_up - e_lo


def sensitivity_beta(spec: TransitionSpec, table: CoefficientTable, B: float,
                     rel_step: float = 1e-4) -> float:
    """d(Delta f_mag)/dB by central difference with step rel_step * B (Hz/T)."""
    dB = rel_step * B
    return (total_magnetic_shift(spec, table, B + dB)
            - total_magnetic_shift(spec, table, B - dB)) / (2 * dB)


def sensitivity_scan(spec: TransitionSpec, table: CoefficientTable, B_range, steps: int):
    """Rows (B, Delta f_mag, beta) on a uniform grid and the zero crossings of beta."""
    lo, hi = B_range
    if not (0.1 <= lo <= hi <= 10.0):
        raise ValueError("B_range must lie within [0.1, 10] T")
    grid = np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])
    rows = [(float(B), total_magnetic_shift(spec, table, B), sensitivity_beta(spec, table, B))
            for B in grid]
    crossings = []
    for (b1, _, s1), (b2, _, s2) in zip(rows, rows[1:]):
        if s1 == 0.0:
            crossings.append(b1)
        elif s1 * s2 < 0:
            crossings.append(_refine_zero(spec, table, b1, b2))
    return rows, crossings


def _refine_zero(spec, table, b1, b2):
    from scipy.optimize import brentq
    return brentq(lambda b: sensitivity_beta(spec, table, b), b1, b2, xtol=1e-9)


def thermalization_time(mass: float, trap_length_D: float, resistance: float, charge: float) -> float:
    """Resistive-cooling time constant m D^2 / (R q^2)."""
    if resistance == math.inf:
        return 0.0
    return mass * trap_length_D**2 / (resistance * charge**2)


def effective_transverse_polarizability(s: SpinState, table: CoefficientTable) -> float:
    """Polarizability (SI) multiplying -E_perp^2/2 for a purely transverse field."""
    c = table[s.level]
    a_t = c.require("alpha_t_dc") if s.N else 0.0
    a = c.require("alpha_s_dc") - 0.5 * a_t * (2 * s.M_N**2 - 2.0 / 3.0 * s.N * (s.N + 1))
    return a * CONST.polarizability_au


def magic_field_from_polarizability(delta_alpha: float, f0: float, cap: float = 100.0) -> float | None:
    """Field at which motional Stark and radial QDS cancel, or None."""
    if delta_alpha >= 0:
        return None
    b = math.sqrt(CONST.planck * f0 / (-delta_alpha * CONST.light_speed**2))
    return b if b <= cap else None


def magic_magnetic_field(spec: TransitionSpec, table: CoefficientTable, cap: float = 100.0) -> float | None:
    d_alpha = (effective_transverse_polarizability(spec.upper, table)
               - effective_transverse_polarizability(spec.lower, table))
    return magic_field_from_polarizability(d_alpha, spec.f0, cap)


BUDGET_ITEMS = ("magnetic", "eqs", "dc_stark", "light_shift", "qds", "bbr")


def shift_budget(spec: TransitionSpec, table: CoefficientTable, trap: TrapConfig,
                 intensity: float = 0.0, include=BUDGET_ITEMS,
                 mass: float = CONST.mass_H2plus) -> ShiftBudget:
    """Itemized shift budget of one spin component."""
    charge = CONST.elementary_charge
    budget = ShiftBudget(f0=spec.f0)
    if "magnetic" in include:
        budget.add("magnetic", total_magnetic_shift(spec, table, trap.B0),
                   "spin structure, Zeeman and dia/paramagnetic terms")
    if "eqs" in include and trap.nu_z:
        budget.add("eqs", eqs_shift(spec, table, trap.nu_z, mass, charge), "quadrupole x trap gradient")
    if "dc_stark" in include:
        budget.add("dc_stark", dc_stark_shift(spec, table, trap, mass, charge),
                   "axial thermal and radial motional field")
    if "light_shift" in include:
        budget.add("light_shift", ac_stark_shift(spec, table, intensity), f"I = {intensity} W/m^2")
    if "qds" in include:
        temps = (trap.T_z, trap.T_plus or 0.0, trap.T_minus)
        budget.add("qds", qds_mean(mass, temps, spec.f0), "thermal mean")
    if "bbr" in include:
        budget.add("bbr", 0.0, f"bound only: |shift| < {BBR_FRACTIONAL_BOUND:g} f0")
    return budget


def cpt_difference_budget(spec: TransitionSpec, table: CoefficientTable, trap: TrapConfig,
                          intensity: float = 0.0, include=BUDGET_ITEMS) -> ShiftBudget:
    """Item-by-item f(matter) - f(antimatter) for charge-conjugate spin components."""
    if spec.species is not Species.MATTER:
        spec = spec.conjugate()
    a = shift_budget(spec, table, trap, intensity, include)
    b = shift_budget(spec.conjugate(), table, trap, intensity, include)
    out = ShiftBudget(f0=spec.f0)
    for (name, va, _, note), (_, vb, _, _) in zip(a.items, b.items):
        out.add(name, va - vb, note)
    return out


def component_combination(frequencies, scheme: str) -> dict:
    """Derive coefficient combinations from measured spin-component frequencies.

    frequencies: iterable of ((lower, upper), f) with f in Hz.
    scheme "rotational_zeeman_mean": mean of a projection-symmetric set, e.g. the
        M_N = 1 -> 1 and -1 -> -1 components; the rotational Zeeman shift cancels.
    scheme "tensor_slot": per-M_s quadratic fit f = a + b M_N + c M_N^2 over
        Delta M_N = 0 components; the M_N^2 coefficient averaged over the two M_s
        values is the difference (upper - lower) of the M_N^2 coefficients of the
        two levels, i.e. the joint chi_t B^2 + alpha_t E^2 (+ quadrupole) slot.
    """
    data = [(tuple(pair), float(f)) for pair, f in frequencies]
    if len(data) < 2:
        raise DependentComponentsError("need at least two components")
    pairs = [p for p, _ in data]
    if len(set(pairs)) < len(pairs):
        raise DependentComponentsError("duplicate components carry no new information")
    if scheme == "rotational_zeeman_mean":
        if sum(lo.M_N for lo, _ in pairs) != 0 or sum(up.M_N for _, up in pairs) != 0:
            raise DependentComponentsError("component set is not symmetric in M_N")
        return {"mean": math.fsum(f for _, f in data) / len(data)}
    if scheme == "tensor_slot":
        groups = defaultdict(list)
        for (lo, up), f in data:
            if lo.M_N != up.M_N:
                raise DependentComponentsError("tensor_slot uses Delta M_N = 0 components")
            groups[lo.M_s].append((lo.M_N, f))
        result = {}
        quad = []
        for ms, pts in sorted(groups.items()):
            m = np.array([p[0] for p in pts], dtype=float)
            y = np.array([p[1] for p in pts])
            design = np.column_stack([np.ones_like(m), m, m * m])
            if np.linalg.matrix_rank(design) < 3:
                raise DependentComponentsError(
                    f"M_s = {ms}: need three distinct M_N values, got {sorted(set(m))}")
            coef, *_ = np.linalg.lstsq(design, y, rcond=None)
            result[f"offset_{ms}"], result[f"linear_{ms}"], result[f"quadratic_{ms}"] = coef
            quad.append(coef[2])
        if len(quad) != 2:
            raise DependentComponentsError("both M_s = +1/2 and -1/2 are needed to remove the odd-M_s terms")
        result["tensor_slot"] = 0.5 * (quad[0] + quad[1])
        return result
    raise ValueError(f"unknown scheme {scheme!r}")


def sensitivity_components(lower_level: tuple[int, int], upper_level: tuple[int, int]):
    """Standard set of spin components: Delta M_N = 0, +-1, +-2 for each M_s."""
    v, N = lower_level
    v2, N2 = upper_level
    out = []
    for ms in (Fraction(1, 2), Fraction(-1, 2)):
        if N == 0:
            pairs = [(0, m) for m in (-2, -1, 0, 1, 2)]
        else:
            pairs = ([(m, m) for m in (-2, -1, 0, 1, 2)]
                     + [(-2, -1), (-1, -2), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 2), (2, 1)]
                     + [(-2, 0), (-1, 1), (0, -2), (0, 2), (1, -1), (2, 0)])
        for mn, mn2 in pairs:
            out.append(TransitionSpec(SpinState(v, N, ms, mn), SpinState(v2, N2, ms, mn2)))
    return out
