"""Effective spin Hamiltonian of H2+ in a strong magnetic field.

All energies are frequencies (energy / h) in Hz.  The para levels are handled
in the |M_N; M_s> product basis, where the spin-rotation coupling c_e s.N is the
only off-diagonal term and the matrix splits into M_F blocks of size one or two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coefficients import LevelCoefficients, Species, SpinState, sign_factors
from .constants import CONST

HALF = Fraction(1, 2)


class UnsupportedLevelError(ValueError):
    pass


@dataclass(frozen=True)
class BasisState:
    index: int
    M_N: int
    M_s: Fraction

    @property
    def M_F(self) -> Fraction:
        return self.M_N + self.M_s


def basis_states(N: int = 2) -> list[BasisState]:
    """Product basis ordered by M_F, then M_s = -1/2 before +1/2."""
    out = []
    twice_mf = range(-(2 * N + 1), 2 * N + 2, 2)
    for tmf in twice_mf:
        mf = Fraction(tmf, 2)
        for ms in (-HALF, HALF):
            mn = mf - ms
            if abs(mn) <= N:
                out.append(BasisState(len(out) + 1, int(mn), ms))
    return out


def _offdiag_factor(N: int, M_N_low: int) -> float:
    """<M_N - 1; +1/2| s.N |M_N; -1/2> for the state with M_s = -1/2."""
    return 0.5 * math.sqrt(N * (N + 1) - M_N_low * (M_N_low - 1))


def build_spin_rotation_matrix(c_e: float, N: int = 2) -> np.ndarray:
    """c_e s.N in the product basis (2(2N+1) states)."""
    basis = basis_states(N)
    n = len(basis)
    h = np.zeros((n, n))
    for i, b in enumerate(basis):
        h[i, i] = c_e * float(b.M_s * b.M_N)
    for i in range(n - 1):
        lo, hi = basis[i], basis[i + 1]
        if lo.M_F == hi.M_F:
            h[i, i + 1] = h[i + 1, i] = c_e * _offdiag_factor(N, lo.M_N)
    return h


def anisotropy_denominator(N: int) -> float:
    """sqrt(N(N+1)(2N-1)(2N+3)); zero for N = 0."""
    return math.sqrt(N * (N + 1) * (2 * N - 1) * (2 * N + 3)) if N > 0 else 0.0


def b_tilde_sq(B: float) -> float:
    """(4 pi / mu_0) a_0^3 B^2 in J, the atomic-unit scaling of B^2."""
    return 4 * math.pi / CONST.vacuum_permeability * CONST.bohr_radius**3 * B * B


@dataclass(frozen=True)
class DiagonalTerms:
    """Coefficients of the diagonal part of the Hamiltonian.

    Diagonal energy of |M_N; M_s>:
        c_e M_s M_N - g_e_prime muB M_s - g_l muB M_N + gamma M_N^2
        + zeta_B M_s M_N^2 + xi
    with muB = (signed mu_B) B / h.
    """

    g_e_prime: float
    g_l: float
    gamma: float
    zeta_B: float
    xi: float
    muB: float
    c_e: float
    N: int

    def element(self, M_s: Fraction | float, M_N: int) -> float:
        ms = float(M_s)
        return (self.c_e * ms * M_N - self.g_e_prime * self.muB * ms
                - self.g_l * self.muB * M_N + self.gamma * M_N * M_N
                + self.zeta_B * ms * M_N * M_N)

    @property
    def Z(self) -> float:
        """zeta_B / (mu_B B), the dimensionless Z of the strong-field expansion."""
        return self.zeta_B / self.muB if self.muB else 0.0


def build_diagonal_terms(coeffs: LevelCoefficients, B: float,
                         E_fields: tuple[float, float] = (0.0, 0.0), V_zz: float = 0.0,
                         intensity: float = 0.0,
                         species: Species | str = Species.MATTER) -> DiagonalTerms:
    """Collect Zeeman, dia/paramagnetic, Stark, quadrupole and light-shift terms.

    E_fields holds (<E_z^2>, <E_perp^2>) in (V/m)^2.  V_zz is the field gradient
    magnitude in V/m^2; the quadrupole energy is even under charge conjugation,
    so its sign does not depend on species.
    """
    if B < 0:
        raise ValueError("B must be non-negative")
    N = coeffs.N
    s_B, _ = sign_factors(species)
    h = CONST.planck
    muB = s_B * CONST.bohr_magneton * B / h
    nn = N * (N + 1)
    den = anisotropy_denominator(N)
    g_t = coeffs.g_t if N > 0 else 0.0
    if N > 0:
        g_t = coeffs.require("g_t")
    g_e_prime = coeffs.g_e - (g_t * nn / den if den else 0.0)
    g_l = coeffs.g_r * CONST.nuclear_magneton / CONST.bohr_magneton
    zeta_B = -3.0 * g_t * muB / den if den else 0.0

    gamma = 0.0
    xi = 0.0
    if B != 0.0:
        dia = -0.5 * CONST.fine_structure**2 * b_tilde_sq(B) / h
        chi_t = coeffs.require("chi_t") if N > 0 else 0.0
        gamma += dia * chi_t
        xi += dia * (coeffs.require("chi_s") - chi_t * nn / 3.0)
    ez2, ep2 = E_fields
    if ez2 or ep2:
        a_s = coeffs.require("alpha_s_dc") * CONST.polarizability_au / h
        a_t = coeffs.require("alpha_t_dc") * CONST.polarizability_au / h
        e_tilde2 = ez2 - 0.5 * ep2
        gamma += -a_t * e_tilde2
        xi += -0.5 * a_s * (ez2 + ep2) + a_t * e_tilde2 * nn / 3.0
    if V_zz and N > 0:
        eq = 1.5**1.5 * coeffs.require("e14") * 1e-3 * abs(V_zz)
        gamma += eq
        xi += -eq * nn / 3.0
    if intensity:
        f2 = 2.0 * intensity / (CONST.vacuum_permittivity * CONST.light_speed)
        a_s = coeffs.require("alpha_s_ac") * CONST.polarizability_au / h
        a_t = coeffs.require("alpha_t_ac") * CONST.polarizability_au / h
        gamma += -f2 * a_t
        xi += -0.5 * f2 * a_s + f2 * a_t * nn / 3.0
    return DiagonalTerms(g_e_prime, g_l, gamma, zeta_B, xi, muB, coeffs.c_e, N)


@dataclass(frozen=True)
class EigenLevel:
    energy: float
    label: SpinState
    M_F: Fraction
    mixing_amplitudes: tuple[float, ...]


def _block_eigen(a: float, b: float, d: float):
    """Eigenpairs of [[a, b], [b, d]] assigned to the basis labels.

    Returns ((E1, X1), (E2, X2)) where level 1 is adiabatically connected to the
    first basis state.  At exactly equal mixing the lower energy goes to the
    first state (the lower M_s).
    """
    m = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), b)
    th = 0.5 * math.atan2(2.0 * b, a - d)
    c, s = math.cos(th), math.sin(th)
    upper = (m + r, (c, s))
    lower = (m - r, (-s, c))
    if abs(c) > abs(s):
        return upper, lower
    if abs(c) < abs(s):
        return lower, upper
    return lower, upper


def para_levels(coeffs: LevelCoefficients, B: float, diag: DiagonalTerms,
                species: Species | str = Species.MATTER) -> list[EigenLevel]:
    """Exact spin levels of an even-N level, sorted by M_F then energy.

    Energies exclude the common offset diag.xi.
    """
    N = coeffs.N
    if N % 2:
        raise UnsupportedLevelError(f"level ({coeffs.v},{N}) is not a para level")
    species = Species(species)
    basis = basis_states(N)
    levels = []
    i = 0
    while i < len(basis):
        b = basis[i]
        if i + 1 < len(basis) and basis[i + 1].M_F == b.M_F:
            b2 = basis[i + 1]
            a = diag.element(b.M_s, b.M_N)
            d = diag.element(b2.M_s, b2.M_N)
            off = diag.c_e * _offdiag_factor(N, b.M_N)
            (e1, x1), (e2, x2) = _block_eigen(a, off, d)
            block = [
                EigenLevel(e1, SpinState(coeffs.v, N, b.M_s, b.M_N, 0, species), b.M_F, x1),
                EigenLevel(e2, SpinState(coeffs.v, N, b2.M_s, b2.M_N, 0, species), b.M_F, x2),
            ]
            levels.extend(sorted(block, key=lambda lv: lv.energy))
            i += 2
        else:
            e = diag.element(b.M_s, b.M_N)
            levels.append(EigenLevel(e, SpinState(coeffs.v, N, b.M_s, b.M_N, 0, species),
                                     b.M_F, (1.0,)))
            i += 1
    return levels


def diagonalize_para_n2(coeffs: LevelCoefficients, B: float, diag: DiagonalTerms,
                        species: Species | str = Species.MATTER) -> list[EigenLevel]:
    """The ten N = 2 spin levels solved block by block in closed form."""
    if coeffs.N != 2:
        raise UnsupportedLevelError(f"level ({coeffs.v},{coeffs.N}): only N = 2 is supported")
    return para_levels(coeffs, B, diag, species)


def full_matrix(diag: DiagonalTerms) -> np.ndarray:
    """Spin-rotation plus diagonal terms as a dense matrix (xi excluded)."""
    h = build_spin_rotation_matrix(diag.c_e, diag.N)
    for i, b in enumerate(basis_states(diag.N)):
        h[i, i] = diag.element(b.M_s, b.M_N)
    return h


def level_energy(s: SpinState, coeffs: LevelCoefficients, B: float,
                 diag: DiagonalTerms | None = None, include_offset: bool = True) -> float:
    """Exact energy of the adiabatically labeled para state s."""
    if diag is None:
        diag = build_diagonal_terms(coeffs, B, species=s.species)
    for lv in para_levels(coeffs, B, diag, s.species):
        if lv.label == s:
            return lv.energy + (diag.xi if include_offset else 0.0)
    raise UnsupportedLevelError(f"state {s} not found")


def expansion_energy(coeffs: LevelCoefficients, B: float, diag: DiagonalTerms,
                     M_F: Fraction | float, group: str,
                     z_in_denominator: bool = True) -> float:
    """Strong-field expansion of an N = 2 spin level.

    group "lower" is the M_s = -1/2 family and "higher" the M_s = +1/2 family.
    With z_in_denominator=False the Z terms are dropped from the c_e^2
    denominators.
    """
    if coeffs.N != 2:
        raise UnsupportedLevelError("expansion is defined for N = 2")
    if group not in ("lower", "higher"):
        raise ValueError("group must be 'lower' or 'higher'")
    tmf = int(Fraction(M_F).limit_denominator(2) * 2)
    key = (tmf, -1 if group == "lower" else 1)
    c, g, gl, Z, mu = diag.c_e, diag.gamma, diag.g_l, diag.Z, diag.muB
    ge = diag.g_e_prime
    zf = 1.0 if z_in_denominator else 0.0
    d1 = 2 * ge - 2 * gl - zf * Z
    d5 = 2 * ge - 2 * gl - 5 * zf * Z
    forms = {
        (-5, -1): lambda: c + 4 * g + 0.5 * mu * (ge + 4 * gl - 4 * Z),
        (-3, -1): lambda: c / 2 + g + 2 * c * c / (mu * d5) + 0.5 * mu * (ge + 2 * gl - Z),
        (-1, -1): lambda: 0.5 * mu * ge + 3 * c * c / (mu * d1),
        (1, -1): lambda: -c / 2 + g + 3 * c * c / (mu * d1) + 0.5 * mu * (ge - 2 * gl - Z),
        (3, -1): lambda: -c + 4 * g + 2 * c * c / (mu * d5) + 0.5 * mu * (ge - 4 * (gl + Z)),
        (-3, 1): lambda: -c + 4 * g - 2 * c * c / (mu * d5) - 0.5 * mu * (ge - 4 * (gl + Z)),
        (-1, 1): lambda: -c / 2 + g - 3 * c * c / (mu * d1) - 0.5 * mu * (ge - 2 * gl - Z),
        (1, 1): lambda: -0.5 * mu * ge - 3 * c * c / (mu * d1),
        (3, 1): lambda: c / 2 + g - 2 * c * c / (mu * d5) - 0.5 * mu * (ge + 2 * gl - Z),
        (5, 1): lambda: c + 4 * g - 0.5 * mu * (ge + 4 * gl - 4 * Z),
    }
    if key not in forms:
        raise ValueError(f"no state with M_F = {Fraction(tmf, 2)} in the {group} group")
    return forms[key]()


def perturbative_energy(s: SpinState, diag: DiagonalTerms) -> float:
    """Diagonal energy plus the leading c_e^2 / B mixing term (xi excluded).

    For fixed M_s the result is a quadratic polynomial in M_N.
    """
    N = diag.N
    ms = float(s.M_s)
    e = diag.element(s.M_s, s.M_N)
    if diag.c_e and diag.muB:
        mf = ms + s.M_N
        e += diag.c_e**2 / (2 * (diag.g_e_prime - diag.g_l) * diag.muB) * (mf * mf - (N + 0.5) ** 2) * ms
    return e


def decoupled_energy(s: SpinState, coeffs: LevelCoefficients, B: float) -> float:
    """Leading strong-field energy of a para state: spin-rotation diagonal,
    electron and rotational Zeeman, and the anisotropic electron Zeeman term."""
    if s.M_I != 0 or s.N % 2:
        raise UnsupportedLevelError("decoupled_energy handles para states; use ortho_energy")
    s_B, s_n = sign_factors(s.species)
    h = CONST.planck
    ms = float(s.M_s)
    e = coeffs.c_e * ms * s.M_N
    e -= s_B * CONST.bohr_magneton * coeffs.g_e * ms * B / h
    e -= s_n * CONST.nuclear_magneton * coeffs.g_r * s.M_N * B / h
    den = anisotropy_denominator(s.N)
    if den:
        e -= ms * s_B * CONST.bohr_magneton * B / h * coeffs.g_t * (3 * s.M_N**2 - s.N * (s.N + 1)) / den
    return e


def ortho_energy(s: SpinState, coeffs: LevelCoefficients, B: float) -> float:
    """Strong-field spin energy of an ortho (odd N) state including hyperfine terms."""
    N = s.N
    if N % 2 == 0:
        raise UnsupportedLevelError("ortho_energy requires odd N")
    s_B, s_n = sign_factors(s.species)
    h = CONST.planck
    ms, mn, mi = float(s.M_s), s.M_N, s.M_I
    e = coeffs.c_e * ms * mn + coeffs.b_F * ms * mi
    e += coeffs.d_1 / ((2 * N - 1) * (2 * N + 3)) * (2.0 / 3.0 * N * (N + 1) * mn - 2 * mn * mn * mi) * ms
    e -= s_B * CONST.bohr_magneton * coeffs.g_e * ms * B / h
    e -= s_n * CONST.nuclear_magneton * CONST.proton_g_bare * mi * B / h
    e -= s_n * CONST.nuclear_magneton * coeffs.g_r * mn * B / h
    return e


def nuclear_spinflip_difference(coeffs: LevelCoefficients, N: int, M_N: int) -> float:
    """f_up - f_down of the two M_I = 0 -> 1 transitions at opposite M_s."""
    if N % 2 == 0:
        raise UnsupportedLevelError("the nuclear spin-flip observable needs odd N")
    return coeffs.b_F - 2.0 * coeffs.d_1 * M_N * M_N / (4 * N * (N + 1) - 3)


def spinflip_pair(coeffs: LevelCoefficients, M_N: int, B: float,
                  species: Species | str = Species.MATTER) -> tuple[float, float]:
    """(f_up, f_down) computed from ortho_energy."""
    v, N = coeffs.v, coeffs.N
    out = []
    for ms in (HALF, -HALF):
        hi = SpinState(v, N, ms, M_N, 1, species)
        lo = SpinState(v, N, ms, M_N, 0, species)
        out.append(ortho_energy(hi, coeffs, B) - ortho_energy(lo, coeffs, B))
    return out[0], out[1]
