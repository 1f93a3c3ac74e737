"""Electric-quadrupole transition amplitudes and Rabi frequencies."""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .coefficients import CoefficientError, read_table_text
from .constants import CONST
from .systematics import TransitionSpec

# Laser field amplitude per sqrt(intensity): E0 = 27.45 sqrt(I) V/m for I in W/m^2
FIELD_PER_SQRT_INTENSITY = 27.45


class ForbiddenTransitionError(ValueError):
    pass


@dataclass(frozen=True)
class Geometry:
    """Angle xi between B and k, Euler angle gamma, polarization (theta, phi)."""

    xi: float = math.pi / 4
    gamma: float = 0.0
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        for name in ("xi", "gamma", "theta", "phi"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class E2Entry:
    reduced_element_BO: float
    reduced_element_var: float
    F_if: float
    f_if: float


@dataclass(frozen=True)
class RabiResult:
    omega_rabi: float
    q: int
    cg: float
    tensor_factor: float
    F_if: float


@dataclass(frozen=True)
class Verdict:
    allowed: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.allowed


def _fact(n: int) -> float:
    return float(math.factorial(n))


def clebsch_gordan(j1: int, m1: int, j2: int, m2: int, J: int, M: int) -> float:
    """<j1 m1; j2 m2 | J M> for integer angular momenta by the Racah formula.

    Out-of-range projections, a violated triangle rule or m1 + m2 != M give 0.
    """
    if m1 + m2 != M:
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(M) > J:
        return 0.0
    if J < abs(j1 - j2) or J > j1 + j2:
        return 0.0
    pre = math.sqrt((2 * J + 1) * _fact(J + j1 - j2) * _fact(J - j1 + j2) * _fact(j1 + j2 - J)
                    / _fact(j1 + j2 + J + 1))
    pre *= math.sqrt(_fact(J + M) * _fact(J - M) * _fact(j1 - m1) * _fact(j1 + m1)
                     * _fact(j2 - m2) * _fact(j2 + m2))
    total = 0.0
    kmin = max(0, j2 - J - m1, j1 - J + m2)
    kmax = min(j1 + j2 - J, j1 - m1, j2 + m2)
    for k in range(kmin, kmax + 1):
        total += (-1) ** k / (_fact(k) * _fact(j1 + j2 - J - k) * _fact(j1 - m1 - k)
                              * _fact(j2 + m2 - k) * _fact(J - j2 + m1 + k) * _fact(J - j1 - m2 + k))
    return pre * total


def tensor_factor_sq(q: int, g: Geometry) -> float:
    """|T^(2)q|^2 of the polarization-propagation tensor for geometry g."""
    s, c = math.sin, math.cos
    xi, ga, th, ph = g.xi, g.gamma, g.theta, g.phi
    if q == 0:
        return 0.125 * s(2 * xi) ** 2 * (c(ga - th) ** 2 + c(ga + th) ** 2
                                         - s(2 * ga) * s(2 * th) * c(ph))
    if abs(q) == 1:
        sign = 1 if q > 0 else -1
        return (c(2 * xi) ** 2 * (c(ga + th) ** 2 + c(ga - th) ** 2) / 12
                + c(xi) ** 2 * (s(ga + th) ** 2 + s(ga - th) ** 2) / 12
                + (1 + 2 * c(2 * xi)) * s(xi) ** 2 * s(2 * ga) * s(2 * th) * c(ph) / 12
                - sign * c(xi) * c(2 * xi) * s(2 * th) * s(ph) / 6)
    if abs(q) == 2:
        sign = 1 if q > 0 else -1
        return (s(xi) ** 2 / 6
                - s(xi) ** 4 * (c(ga + th) ** 2 + c(ga - th) ** 2) / 12
                + s(xi) ** 4 * s(2 * ga) * s(2 * th) * c(ph) / 12
                - sign * s(xi) * s(2 * xi) * s(2 * th) * s(ph) / 12)
    raise ForbiddenTransitionError(f"|q| = {abs(q)} > 2")


def load_e2_table(path: str | Path | None = None) -> dict:
    """Map (v, N, v', N') -> E2Entry from the shipped or a user file."""
    if path is None:
        text = resources.files("h2ion.data").joinpath("e2_table.dat").read_text()
        source = "e2_table.dat"
    else:
        text, source = Path(path).read_text(), str(path)
    _, header, rows = read_table_text(text, source)
    need = ["v", "N", "v2", "N2", "reduced_element_BO", "reduced_element_var", "F_if", "f_if"]
    if header != need:
        raise CoefficientError(f"{source}: header must be {' '.join(need)}")
    table = {}
    for _, vals in rows:
        key = tuple(int(x) for x in vals[:4])
        table[key] = E2Entry(*vals[4:])
    return table


def implied_F_if(entry: E2Entry, f_if: float | None = None) -> float:
    """F_if recomputed as omega/(2 hbar c) times the reduced element in SI units."""
    f = entry.f_if if f_if is None else f_if
    q_si = entry.reduced_element_BO * CONST.elementary_charge * CONST.bohr_radius**2
    return 2 * math.pi * f * q_si / (2 * CONST.reduced_planck * CONST.light_speed)


def implied_frequency(entry: E2Entry) -> float:
    """Transition frequency (Hz) that makes the tabulated F_if and reduced element agree."""
    q_si = entry.reduced_element_BO * CONST.elementary_charge * CONST.bohr_radius**2
    return entry.F_if * 2 * CONST.reduced_planck * CONST.light_speed / q_si / (2 * math.pi)


def selection_check(spec: TransitionSpec) -> Verdict:
    lo, up = spec.lower, spec.upper
    if up.M_s != lo.M_s:
        return Verdict(False, "electron spin flip: Delta M_s must be 0")
    if lo.N == 0 and up.N == 0:
        return Verdict(False, "N = 0 -> 0 is excluded for E2")
    if abs(up.N - lo.N) not in (0, 2):
        return Verdict(False, f"Delta N = {up.N - lo.N} not in {{0, +-2}}")
    if abs(up.M_N - lo.M_N) > 2:
        return Verdict(False, f"|q| = {abs(up.M_N - lo.M_N)} > 2")
    if abs(up.M_F - lo.M_F) > 2:
        return Verdict(False, "|Delta M_F| > 2")
    return Verdict(True, "")


def _lookup(spec: TransitionSpec, table: dict) -> E2Entry:
    key = (spec.lower.v, spec.lower.N, spec.upper.v, spec.upper.N)
    if key not in table:
        raise KeyError(f"no E2 data for {key}")
    return table[key]


def _amplitude(spec: TransitionSpec, table: dict, g: Geometry):
    verdict = selection_check(spec)
    if not verdict:
        raise ForbiddenTransitionError(verdict.reason)
    entry = _lookup(spec, table)
    q = spec.upper.M_N - spec.lower.M_N
    cg = clebsch_gordan(spec.lower.N, spec.lower.M_N, 2, q, spec.upper.N, spec.upper.M_N)
    tf2 = tensor_factor_sq(q, g)
    # the closed forms are O(1); anything at round-off level is an exact zero
    tf = math.sqrt(tf2) if tf2 > 1e-14 else 0.0
    return entry, q, cg, tf


def rabi_frequency(spec: TransitionSpec, table: dict, intensity: float, g: Geometry) -> RabiResult:
    """Rabi frequency (rad/s) of one spin component at laser intensity I (W/m^2)."""
    entry, q, cg, tf = _amplitude(spec, table, g)
    omega = FIELD_PER_SQRT_INTENSITY * entry.F_if * math.sqrt(intensity) * abs(cg) * tf
    return RabiResult(omega, q, cg, tf, entry.F_if)


def required_intensity(spec: TransitionSpec, table: dict, target_rabi: float, g: Geometry) -> float:
    entry, _, cg, tf = _amplitude(spec, table, g)
    per_sqrt_i = FIELD_PER_SQRT_INTENSITY * entry.F_if * abs(cg) * tf
    if per_sqrt_i == 0.0:
        raise ForbiddenTransitionError("zero coupling for this component and geometry")
    return (target_rabi / per_sqrt_i) ** 2


def table_consistency(table: dict, tolerance: float = 0.005) -> list[dict]:
    """Cross-check the F_if column against the reduced elements.

    For rows with a bundled frequency the recomputed F_if must agree within
    tolerance.  For every row the implied frequency is also compared with the
    other rows of the same (v, N) -> (., N') series, which must increase with v';
    rows breaking that ordering are flagged as suspect.
    """
    report = []
    series = {}
    for key in sorted(table):
        series.setdefault((key[0], key[1], key[3]), []).append(key)
    suspect = set()
    for keys in series.values():
        freqs = [implied_frequency(table[k]) for k in keys]
        for i, k in enumerate(keys):
            prev_ok = i == 0 or freqs[i] > freqs[i - 1]
            next_ok = i == len(keys) - 1 or freqs[i] < freqs[i + 1]
            if not (prev_ok or next_ok) or (i == len(keys) - 1 and not prev_ok) or (i == 0 and not next_ok):
                suspect.add(k)
    for key in sorted(table):
        e = table[key]
        row = {"transition": key, "implied_frequency": implied_frequency(e),
               "F_if": e.F_if, "relative_deviation": float("nan"), "ok": key not in suspect}
        if math.isfinite(e.f_if):
            dev = implied_F_if(e) / e.F_if - 1.0
            row["relative_deviation"] = dev
            row["ok"] = row["ok"] and abs(dev) <= tolerance
        report.append(row)
    return report
