"""Axial sympathetic cooling of a molecular ion by a Be+ ion in a double well.

Particle a is the Be+ logic ion in the well at -s0/2, particle b the (anti-)H2+
ion in the well at +s0/2.  Both move on the trap axis under a common
electrostatic potential Phi(z) (energy q Phi) and their softened Coulomb
interaction.  Integration is velocity Verlet in a numba kernel that advances
ensemble members in lockstep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

from .constants import CONST

COULOMB_K = 1.0 / (4.0 * math.pi * CONST.vacuum_permittivity)
DEFAULT_DT = 50e-9
DEFAULT_EPS = 1e-6
_CHUNK = 16


class CoolingError(ValueError):
    pass


@dataclass(frozen=True)
class ParticleState:
    mass: float
    charge: float
    z: float
    v: float = 0.0

    def __post_init__(self):
        if not self.mass > 0:
            raise CoolingError("mass must be positive")
        if self.charge == 0:
            raise CoolingError("charge must be non-zero")


@dataclass(frozen=True)
class DoubleWell:
    """Per-species wells joined by a C2 blend of width 2 * blend_width around z = 0.

    ell_a, ell_b > 0 soften the corresponding well to
    U = k ell^2 (sqrt(1 + u^2/ell^2) - 1), whose frequency falls with amplitude;
    ell = 0 gives a harmonic well.  With coulomb_curvature set, the trap
    curvatures are reduced by the Coulomb curvature 2 k q_a q_b / s0^3 so that
    trap plus interaction oscillate at omega_a and omega_b.
    """

    s0: float
    omega_a: float
    omega_b: float
    polarity: str
    mass_a: float
    charge_a: float
    mass_b: float
    charge_b: float
    ell_a: float = 0.0
    ell_b: float = 0.0
    blend_width: float = 0.0
    coulomb_curvature: float = 0.0

    @property
    def kappa_a(self) -> float:
        return self.mass_a * self.omega_a**2 - self.coulomb_curvature

    @property
    def kappa_b(self) -> float:
        return self.mass_b * self.omega_b**2 - self.coulomb_curvature

    def potential(self, z, kappa_a: float | None = None):
        """Electrostatic potential Phi(z) in V."""
        ka = self.kappa_a if kappa_a is None else kappa_a
        z = np.asarray(z, dtype=float)
        out = np.empty_like(z)
        for idx, zi in np.ndenumerate(z):
            out[idx] = _phi(zi, ka, self.kappa_b, self.charge_a, self.charge_b, 0.5 * self.s0,
                            self.blend_width, _inv_sq(self.ell_a), _inv_sq(self.ell_b))[0]
        return out

    def energy(self, which: str, z, kappa_a: float | None = None):
        """Potential energy q Phi(z) of particle a or b."""
        q = self.charge_a if which == "a" else self.charge_b
        return q * self.potential(z, kappa_a)

    def force(self, which: str, z, kappa_a: float | None = None):
        ka = self.kappa_a if kappa_a is None else kappa_a
        q = self.charge_a if which == "a" else self.charge_b
        z = np.asarray(z, dtype=float)
        out = np.empty_like(z)
        for idx, zi in np.ndenumerate(z):
            out[idx] = -q * _phi(zi, ka, self.kappa_b, self.charge_a, self.charge_b, 0.5 * self.s0,
                                 self.blend_width, _inv_sq(self.ell_a), _inv_sq(self.ell_b))[1]
        return out


@dataclass(frozen=True)
class SweepProtocol:
    """Be+ frequency ramped f_start -> f_end in n_steps linear ramps of omega^2."""

    f_start: float
    f_end: float
    duration: float
    n_steps: int = 1

    def __post_init__(self):
        if not self.duration > 0:
            raise CoolingError("sweep duration must be positive")
        if self.n_steps < 1:
            raise CoolingError("n_steps must be at least 1")

    def nodes(self, mass_a: float):
        t = np.linspace(0.0, self.duration, self.n_steps + 1)
        f = np.linspace(self.f_start, self.f_end, self.n_steps + 1)
        return t, mass_a * (2 * math.pi * f) ** 2


@dataclass
class Trajectory:
    t: np.ndarray
    z_a: np.ndarray
    v_a: np.ndarray
    E_a: np.ndarray
    z_b: np.ndarray
    v_b: np.ndarray
    E_b: np.ndarray
    collided: bool = False
    collision_time: float = math.nan

    def rows(self):
        return zip(self.t, self.z_a, self.v_a, self.E_a, self.z_b, self.v_b, self.E_b)


def _inv_sq(ell: float) -> float:
    return 1.0 / (ell * ell) if ell > 0 else 0.0


@numba.njit(cache=True, inline="always")
def _well(u, inv_ell2):
    if inv_ell2 == 0.0:
        return 0.5 * u * u, u
    r = math.sqrt(1.0 + u * u * inv_ell2)
    return (r - 1.0) / inv_ell2, u / r


@numba.njit(cache=True, inline="always")
def _phi(z, ka, kb, qa, qb, h, w, ia, ib):
    """Potential and its derivative at z."""
    wa, da = _well(z + h, ia)
    wb, db = _well(z - h, ib)
    pa, dpa = ka * wa / qa, ka * da / qa
    pb, dpb = kb * wb / qb, kb * db / qb
    if w <= 0.0:
        if z < 0.0:
            return pa, dpa
        return pb, dpb
    x = (z + w) / (2.0 * w)
    if x <= 0.0:
        return pa, dpa
    if x >= 1.0:
        return pb, dpb
    s = x * x * x * (10.0 - 15.0 * x + 6.0 * x * x)
    ds = 30.0 * x * x * (1.0 - x) * (1.0 - x) / (2.0 * w)
    return (1.0 - s) * pa + s * pb, (1.0 - s) * dpa + s * dpb + ds * (pb - pa)


@numba.njit(cache=True, inline="always")
def _grad(u, inv_ell2):
    if inv_ell2 == 0.0:
        return u
    return u / math.sqrt(1.0 + u * u * inv_ell2)


@numba.njit(cache=True, inline="always")
def _trap_force(z, q, ka, kb, qa, qb, h, w, ia, ib):
    """-q dPhi/dz; the blend branch is only taken near the barrier."""
    if z <= -w:
        return -q * ka / qa * _grad(z + h, ia)
    if z >= w:
        return -q * kb / qb * _grad(z - h, ib)
    return -q * _phi(z, ka, kb, qa, qb, h, w, ia, ib)[1]


@numba.njit(cache=True, inline="always")
def _kappa(t, tn, kn):
    n = tn.shape[0]
    if t >= tn[n - 1]:
        return kn[n - 1]
    if t <= tn[0]:
        return kn[0]
    lo = 0
    hi = n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tn[mid] <= t:
            lo = mid
        else:
            hi = mid
    x = (t - tn[lo]) / (tn[hi] - tn[lo])
    return kn[lo] + (kn[hi] - kn[lo]) * x


@numba.njit(cache=True)
def _run_chunk(za, va, zb, vb, p, tn, kn, dt, nsteps, stride, oza, ova, ozb, ovb, ok, status, j0, j1):
    qa, qb, ma, mb, h, w, ia, ib, kb, eps, kc = p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7], p[8], p[9], p[10]
    m = j1 - j0
    fa = np.empty(m)
    fb = np.empty(m)
    eps2 = eps * eps
    ca = 0.5 * dt / ma
    cb = 0.5 * dt / mb
    ka = _kappa(0.0, tn, kn)
    for k in range(m):
        j = j0 + k
        d = zb[j] - za[j]
        r2 = d * d + eps2
        fc = kc * d / (r2 * math.sqrt(r2))
        fa[k] = _trap_force(za[j], qa, ka, kb, qa, qb, h, w, ia, ib) - fc
        fb[k] = _trap_force(zb[j], qb, ka, kb, qa, qb, h, w, ia, ib) + fc
        oza[0, j] = za[j]
        ova[0, j] = va[j]
        ozb[0, j] = zb[j]
        ovb[0, j] = vb[j]
    ok[0] = ka
    for i in range(1, nsteps + 1):
        ka = _kappa(i * dt, tn, kn)
        for k in range(m):
            j = j0 + k
            va[j] += ca * fa[k]
            vb[j] += cb * fb[k]
            za[j] += dt * va[j]
            zb[j] += dt * vb[j]
            d = zb[j] - za[j]
            if abs(d) < eps and status[j] < 0:
                status[j] = i
            r2 = d * d + eps2
            fc = kc * d / (r2 * math.sqrt(r2))
            fa[k] = _trap_force(za[j], qa, ka, kb, qa, qb, h, w, ia, ib) - fc
            fb[k] = _trap_force(zb[j], qb, ka, kb, qa, qb, h, w, ia, ib) + fc
            va[j] += ca * fa[k]
            vb[j] += cb * fb[k]
        if i % stride == 0:
            s = i // stride
            ok[s] = ka
            for k in range(m):
                j = j0 + k
                oza[s, j] = za[j]
                ova[s, j] = va[j]
                ozb[s, j] = zb[j]
                ovb[s, j] = vb[j]


@numba.njit(cache=True, parallel=True)
def _run_batch(za, va, zb, vb, p, tn, kn, dt, nsteps, stride, oza, ova, ozb, ovb, ok, status, chunk):
    n = za.shape[0]
    nchunks = (n + chunk - 1) // chunk
    for c in numba.prange(nchunks):
        j0 = c * chunk
        j1 = min(n, j0 + chunk)
        _run_chunk(za, va, zb, vb, p, tn, kn, dt, nsteps, stride, oza, ova, ozb, ovb, ok, status, j0, j1)


def exchange_time(m_a: float, m_b: float, q_a: float, q_b: float, omega_z: float, s0: float):
    """Full energy-exchange time 2 pi^2 eps0 s0^3 sqrt(m_a m_b) omega_z / |q_a q_b|.

    Returns (tau_ex, sign of q_a q_b); the sign tells whether the pair repels.
    """
    if min(m_a, m_b, omega_z, s0) <= 0 or q_a == 0 or q_b == 0:
        raise CoolingError("masses, frequency, separation and charges must be non-zero and positive")
    tau = 2 * math.pi**2 * CONST.vacuum_permittivity * s0**3 * math.sqrt(m_a * m_b) * omega_z / abs(q_a * q_b)
    return tau, int(math.copysign(1, q_a * q_b))


def species_pair(polarity: str):
    """(mass_a, q_a, mass_b, q_b) for the Be+ / (anti-)H2+ pair."""
    e = CONST.elementary_charge
    if polarity == "matter":
        return CONST.mass_Be9plus, e, CONST.mass_H2plus, e
    if polarity == "antimatter":
        return CONST.mass_Be9plus, e, CONST.mass_H2plus, -e
    raise CoolingError(f"polarity must be 'matter' or 'antimatter', got {polarity!r}")


def build_double_well(s0: float, omega_a: float, omega_b: float, polarity: str = "matter",
                      ell_a: float = 0.0, ell_b: float = 0.0,
                      blend_width: float | None = None, compensate: bool = True) -> DoubleWell:
    if not 0.1e-3 <= s0 <= 2e-3:
        raise CoolingError(f"s0 = {s0} m outside [0.1, 2] mm")
    for name, om in (("omega_a", omega_a), ("omega_b", omega_b)):
        if not 2 * math.pi * 50e3 <= om <= 2 * math.pi * 1000e3:
            raise CoolingError(f"{name} outside 2 pi x [50, 1000] kHz")
    if ell_a < 0 or ell_b < 0:
        raise CoolingError("softening lengths must be non-negative")
    w = s0 / 7 if blend_width is None else blend_width
    if not 0 <= w < s0 / 2:
        raise CoolingError("blend width must lie in [0, s0/2)")
    ma, qa, mb, qb = species_pair(polarity)
    cc = 2 * COULOMB_K * qa * qb / s0**3 if compensate else 0.0
    return DoubleWell(s0, omega_a, omega_b, polarity, ma, qa, mb, qb, ell_a, ell_b, w, cc)


def _params(well: DoubleWell, eps: float, coulomb: bool) -> np.ndarray:
    kc = COULOMB_K * well.charge_a * well.charge_b if coulomb else 0.0
    return np.array([well.charge_a, well.charge_b, well.mass_a, well.mass_b, 0.5 * well.s0,
                     well.blend_width, _inv_sq(well.ell_a), _inv_sq(well.ell_b), well.kappa_b, eps, kc])


def _schedule(well: DoubleWell, sweep: SweepProtocol | None, hold: float = 0.0):
    if sweep is None:
        return np.array([0.0, 1.0]), np.array([well.kappa_a, well.kappa_a])
    tn, kn = sweep.nodes(well.mass_a)
    kn = kn - well.coulomb_curvature
    if hold > 0:
        tn = np.append(tn, tn[-1] + hold)
        kn = np.append(kn, kn[-1])
    return tn, kn


def _energies(well: DoubleWell, z_a, v_a, z_b, v_b, kappa_a):
    """Per-particle kinetic plus electrostatic energy (interaction excluded)."""
    ia, ib = _inv_sq(well.ell_a), _inv_sq(well.ell_b)
    h, w = 0.5 * well.s0, well.blend_width
    ea = np.empty(np.shape(z_a))
    eb = np.empty(np.shape(z_b))
    for idx in np.ndindex(ea.shape):
        ka = kappa_a[idx[0]] if np.ndim(kappa_a) else kappa_a
        ea[idx] = well.charge_a * _phi(z_a[idx], ka, well.kappa_b, well.charge_a, well.charge_b,
                                       h, w, ia, ib)[0] + 0.5 * well.mass_a * v_a[idx] ** 2
        eb[idx] = well.charge_b * _phi(z_b[idx], ka, well.kappa_b, well.charge_a, well.charge_b,
                                       h, w, ia, ib)[0] + 0.5 * well.mass_b * v_b[idx] ** 2
    return ea, eb


def _propagate(well, za, va, zb, vb, dt, nsteps, stride, sweep, hold, eps, coulomb):
    if not 0 < dt <= 100e-9:
        raise CoolingError("dt must lie in (0, 100 ns]")
    if nsteps > 10**9:
        raise CoolingError("t_end/dt exceeds 1e9 steps")
    za, va, zb, vb = (np.array(x, dtype=float) for x in (za, va, zb, vb))
    stride = max(1, min(stride, nsteps))
    nsamp = nsteps // stride + 1
    m = za.shape[0]
    out = [np.zeros((nsamp, m)) for _ in range(4)]
    ok = np.zeros(nsamp)
    status = np.full(m, -1, dtype=np.int64)
    tn, kn = _schedule(well, sweep, hold)
    _run_batch(za, va, zb, vb, _params(well, eps, coulomb), tn, kn, dt, nsteps, stride,
               *out, ok, status, _CHUNK)
    t = np.arange(nsamp) * stride * dt
    return t, out, ok, status


def integrate(pair, well: DoubleWell, dt: float, t_end: float, sweep: SweepProtocol | None = None,
              stride: int = 100, eps: float = DEFAULT_EPS, coulomb: bool = True,
              hold: float = 0.0) -> Trajectory:
    """Velocity-Verlet trajectory of the pair (particle a, particle b).

    Energies are sampled every stride steps.  A close approach below eps stops
    the run and sets the collided flag.
    """
    a, b = pair
    if (a.mass, a.charge, b.mass, b.charge) != (well.mass_a, well.charge_a, well.mass_b, well.charge_b):
        raise CoolingError("particle masses/charges do not match the double well")
    nsteps = int(round(t_end / dt))
    za, va = np.array([a.z]), np.array([a.v])
    zb, vb = np.array([b.z]), np.array([b.v])
    t, (oza, ova, ozb, ovb), ok, status = _propagate(well, za, va, zb, vb, dt, nsteps, stride,
                                                     sweep, hold, eps, coulomb)
    ea, eb = _energies(well, oza, ova, ozb, ovb, ok)
    collided = status[0] >= 0
    n = len(t)
    tc = math.nan
    if collided:
        tc = status[0] * dt
        n = int(status[0] // max(1, min(stride, nsteps))) + 1
    return Trajectory(t[:n], oza[:n, 0], ova[:n, 0], ea[:n, 0], ozb[:n, 0], ovb[:n, 0], eb[:n, 0],
                      collided, tc)


@dataclass(frozen=True)
class CoolingConfig:
    """Sweep pre-cooling protocol for one Be+ / molecular-ion pair."""

    polarity: str = "matter"
    s0: float = 0.7e-3
    nu_b: float = 300e3
    ell_b: float = 300e-6
    sweep: SweepProtocol = field(default_factory=lambda: SweepProtocol(270e3, 300e3, 1.5, 30))
    hold: float = 0.0
    be_energy: float = 0.0
    dt: float = DEFAULT_DT
    eps: float = DEFAULT_EPS

    def well(self) -> DoubleWell:
        return build_double_well(self.s0, 2 * math.pi * self.sweep.f_start, 2 * math.pi * self.nu_b,
                                 self.polarity, 0.0, self.ell_b)


def _start_positions(well: DoubleWell, kappa_a: float, energy_b, phase_b, energy_a, phase_a):
    """Positions and velocities placing each ion at the given energy and phase of its own well."""
    h = 0.5 * well.s0

    def place(energy, phase, kappa, inv, mass, center):
        energy = np.asarray(energy, dtype=float)
        if inv == 0.0:
            amp = np.sqrt(2 * energy / kappa)
        else:
            x = energy * inv / kappa + 1.0
            amp = np.sqrt(x * x - 1.0) / math.sqrt(inv)
        u = amp * np.cos(phase)
        if inv == 0.0:
            pot = 0.5 * kappa * u * u
        else:
            pot = kappa * (np.sqrt(1 + u * u * inv) - 1.0) / inv
        v = -np.sign(np.sin(phase)) * np.sqrt(np.maximum(2 * (energy - pot) / mass, 0.0))
        return center + u, v

    za, va = place(energy_a, phase_a, kappa_a, _inv_sq(well.ell_a), well.mass_a, -h)
    zb, vb = place(energy_b, phase_b, well.kappa_b, _inv_sq(well.ell_b), well.mass_b, h)
    return za, va, zb, vb


def simulate_cooling_batch(initial_energies, config: CoolingConfig = CoolingConfig(),
                           phases=None) -> np.ndarray:
    """Final molecular-ion energies (J) after the sweep (and hold) for each initial energy."""
    e0 = np.atleast_1d(np.asarray(initial_energies, dtype=float))
    if np.any(e0 < 0):
        raise CoolingError("initial energy must be non-negative")
    well = config.well()
    phases = np.zeros_like(e0) if phases is None else np.asarray(phases, dtype=float)
    tn, kn = _schedule(well, config.sweep, config.hold)
    za, va, zb, vb = _start_positions(well, kn[0], e0, phases, np.full_like(e0, config.be_energy),
                                      np.zeros_like(e0))
    total = config.sweep.duration + config.hold
    nsteps = int(round(total / config.dt))
    _, (oza, ova, ozb, ovb), ok, status = _propagate(well, za, va, zb, vb, config.dt, nsteps, nsteps,
                                                     config.sweep, config.hold, config.eps, True)
    _, eb = _energies(well, oza[-1:], ova[-1:], ozb[-1:], ovb[-1:], ok[-1:])
    final = eb[0].copy()
    # collisions and ions lost over the barrier count as not cooled
    final[(status >= 0) | ~np.isfinite(final)] = math.inf
    return final


def simulate_cooling(initial_energy: float, config: CoolingConfig = CoolingConfig(),
                     phase: float = 0.0) -> float:
    """Final molecular-ion energy (J) for one initial energy."""
    return float(simulate_cooling_batch([initial_energy], config, [phase])[0])


def boltzmann_ensemble(T: float, n: int, seed: int) -> np.ndarray:
    """n exponential draws (J) with mean k_B T from a seeded generator."""
    if not T > 0 or n < 1:
        raise CoolingError("require T > 0 and n >= 1")
    rng = np.random.default_rng(seed)
    return rng.exponential(CONST.boltzmann * T, size=n)


@dataclass
class EnsembleResult:
    fraction: float
    initial: np.ndarray
    final: np.ndarray
    threshold: float


def ensemble_cooling_fraction(T: float, config: CoolingConfig, n: int, threshold: float,
                              seed: int = 0) -> EnsembleResult:
    """Fraction of a thermal ensemble cooled below threshold (energy in J).

    Each member gets an independent uniform phase of its axial motion.
    """
    if T <= 0 and n >= 1:
        z = np.zeros(n)
        return EnsembleResult(1.0, z, z, threshold)
    energies = boltzmann_ensemble(T, n, seed)
    phases = np.random.default_rng([seed, 1]).uniform(0, 2 * math.pi, n)
    if math.isinf(threshold):
        return EnsembleResult(1.0, energies, np.full(n, np.nan), threshold)
    final = simulate_cooling_batch(energies, config, phases)
    return EnsembleResult(float(np.mean(final < threshold)), energies, final, threshold)


@dataclass
class CoolingMap:
    energies: np.ndarray
    nu_z: np.ndarray
    final: np.ndarray
    success: np.ndarray
    boundary: np.ndarray
    slope_mK_per_kHz: float

    def rows(self):
        for j, nu in enumerate(self.nu_z):
            for i, e in enumerate(self.energies):
                yield e, nu, bool(self.success[j, i]), self.final[j, i]


def cooling_map(energy_grid, nu_z_grid, s0: float, threshold: float = 1e-3,
                polarity: str = "matter", dt: float = DEFAULT_DT, eps: float = DEFAULT_EPS) -> CoolingMap:
    """Single resonant exchange in harmonic wells on an (energy, nu_z) grid.

    energy_grid and threshold are in kelvin (units of k_B).  Each cell runs
    for one exchange time; success means the molecular ion ends below
    threshold.  The boundary is the largest energy of the contiguous run of
    successes starting at the lowest energy.
    """
    energies = np.asarray(energy_grid, dtype=float)
    nus = np.asarray(nu_z_grid, dtype=float)
    if np.any(np.diff(energies) <= 0) or np.any(np.diff(nus) <= 0):
        raise CoolingError("grids must be strictly increasing")
    kB = CONST.boltzmann
    final = np.zeros((len(nus), len(energies)))
    for j, nu in enumerate(nus):
        om = 2 * math.pi * nu
        well = build_double_well(s0, om, om, polarity)
        tau = exchange_time(well.mass_a, well.mass_b, well.charge_a, well.charge_b, om, s0)[0]
        za, va, zb, vb = _start_positions(well, well.kappa_a, energies * kB, np.zeros_like(energies),
                                          np.zeros_like(energies), np.zeros_like(energies))
        nsteps = int(round(tau / dt))
        _, (oza, ova, ozb, ovb), ok, status = _propagate(well, za, va, zb, vb, dt, nsteps, nsteps,
                                                         None, 0.0, eps, True)
        _, eb = _energies(well, oza[-1:], ova[-1:], ozb[-1:], ovb[-1:], ok[-1:])
        final[j] = np.where((status >= 0) | ~np.isfinite(eb[0]), math.inf, eb[0] / kB)
    success = final < threshold
    boundary = np.zeros(len(nus))
    for j in range(len(nus)):
        ok_run = np.cumprod(success[j]).astype(bool)
        boundary[j] = energies[ok_run][-1] if ok_run.any() else 0.0
    slope = float(np.polyfit(nus / 1e3, boundary * 1e3, 1)[0]) if len(nus) > 1 else math.nan
    return CoolingMap(energies, nus, final, success, boundary, slope)


def energy_drift(energy) -> float:
    """Secular drift: relative change between the first-half and second-half mean energy.

    Velocity Verlet carries a bounded O((omega dt)^2) ripple that does not
    accumulate; comparing half-run means isolates the part that does.
    """
    e = np.asarray(energy, dtype=float)
    n = e.size // 2
    if n < 1:
        raise CoolingError("need at least two energy samples")
    ref = float(np.mean(np.abs(e)))
    if ref == 0.0:
        return 0.0
    return abs(float(np.mean(e[n:])) - float(np.mean(e[:n]))) / ref


def fitted_exchange_time(traj: Trajectory) -> float:
    """Exchange time from a fit of E_b(t) = E0 cos^2(pi t / (2 tau)) + c."""
    from scipy.optimize import curve_fit

    scale = float(np.max(traj.E_b)) or 1.0
    e = traj.E_b / scale
    tmax = float(traj.t[-1])
    guess = float(traj.t[int(np.argmin(e))]) / tmax or 0.5

    def model(x, e0, tau, c):
        return e0 * np.cos(0.5 * math.pi * x / tau) ** 2 + c

    popt, _ = curve_fit(model, traj.t / tmax, e, p0=(e[0], guess, 0.0))
    popt[1] *= tmax
    return abs(popt[1])


__all__ = [
    "ParticleState", "DoubleWell", "SweepProtocol", "Trajectory", "CoolingConfig", "CoolingMap",
    "EnsembleResult", "CoolingError", "exchange_time", "build_double_well", "species_pair",
    "integrate", "simulate_cooling", "simulate_cooling_batch", "boltzmann_ensemble",
    "ensemble_cooling_fraction", "cooling_map", "fitted_exchange_time", "energy_drift",
]
