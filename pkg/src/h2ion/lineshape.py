"""Line shapes broadened by the second-order Doppler shift, and line-center fits.

The axial energy is Boltzmann distributed, so the QDS magnitude s >= 0 follows
an exponential law with mean sigma.  Each molecule sees a Lorentzian of full
width delta_int centered at -s, which gives

    p(f) = integral_0^inf L(f + s) exp(-s/sigma)/sigma ds
         = Im[exp(z) E1(z)] / (pi sigma),   z = (f - i delta_int/2) / sigma.

Shifts are red (negative detuning); the sharp edge sits at the unperturbed
frequency and the exponential tail extends to lower frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize, special

from .constants import CONST

_ASYMPTOTIC_RADIUS = 400.0


class FitError(RuntimeError):
    pass


def qds_scale_from_temperature(mass: float, T_z: float, f0: float) -> float:
    """Mean axial QDS magnitude f0 k_B T_z / (2 m c^2) in Hz."""
    if T_z < 0:
        raise ValueError("T_z must be non-negative")
    return f0 * CONST.boltzmann * T_z / (2 * mass * CONST.light_speed**2)


def temperature_from_qds_scale(mass: float, sigma: float, f0: float) -> float:
    return sigma * 2 * mass * CONST.light_speed**2 / (CONST.boltzmann * f0)


def _exp_e1(z: np.ndarray) -> np.ndarray:
    """exp(z) E1(z) without overflow; asymptotic series for large |z|."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    big = np.abs(z) > _ASYMPTOTIC_RADIUS
    small = ~big
    out[small] = np.exp(z[small]) * special.exp1(z[small])
    if np.any(big):
        zb = z[big]
        term = 1.0 / zb
        acc = term.copy()
        for k in range(1, 12):
            term = -term * k / zb
            acc += term
        out[big] = acc
    return out


def lorentzian(f, delta_int: float):
    g = 0.5 * delta_int
    return g / (math.pi * (np.asarray(f, dtype=float) ** 2 + g * g))


def line_density(f, delta_int: float, qds_scale: float, radial_offset: float = 0.0):
    """Normalized profile density (1/Hz) at detunings f."""
    if delta_int <= 0:
        raise ValueError("delta_int must be positive")
    if qds_scale < 0:
        raise ValueError("qds_scale must be non-negative")
    x = np.asarray(f, dtype=float) + radial_offset
    if qds_scale == 0.0:
        return lorentzian(x, delta_int)
    z = (x - 0.5j * delta_int) / qds_scale
    return np.maximum(_exp_e1(z).imag / (math.pi * qds_scale), 0.0)


def line_density_quad(f: float, delta_int: float, qds_scale: float) -> float:
    """Same density by adaptive quadrature of the defining convolution."""
    if qds_scale == 0.0:
        return float(lorentzian(f, delta_int))
    integrand = lambda s: float(lorentzian(f + s, delta_int)) * math.exp(-s / qds_scale) / qds_scale
    breaks = [max(-f, 0.0)] if -f > 0 else None
    val, _ = integrate.quad(integrand, 0.0, np.inf, points=None, limit=400,
                            epsabs=0.0, epsrel=1e-10) if breaks is None else (
        sum(integrate.quad(integrand, a, b, limit=400, epsabs=0.0, epsrel=1e-10)[0]
            for a, b in ((0.0, breaks[0]), (breaks[0], breaks[0] + 50 * delta_int))), None)
    if breaks is not None:
        val += integrate.quad(integrand, breaks[0] + 50 * delta_int, np.inf,
                              limit=400, epsabs=0.0, epsrel=1e-10)[0]
    return val


@dataclass
class LineProfile:
    detuning: np.ndarray
    amplitude: np.ndarray
    delta_int: float
    qds_scale: float
    radial_offset: float = 0.0
    coarse_grid: bool = False

    def integral(self) -> float:
        return float(np.trapezoid(self.amplitude, self.detuning))

    def mean(self) -> float:
        return float(np.trapezoid(self.amplitude * self.detuning, self.detuning) / self.integral())

    def peak(self) -> float:
        return float(self.detuning[np.argmax(self.amplitude)])


def line_profile(delta_int: float, qds_scale: float, grid, radial_offset: float = 0.0,
                 radial_scale: float = 0.0) -> LineProfile:
    """Evaluate the profile on a detuning grid.

    radial_scale > 0 replaces the rigid radial offset by a second exponential
    convolution with that mean (exploratory option).
    """
    grid = np.asarray(grid, dtype=float)
    amp = line_density(grid, delta_int, qds_scale, radial_offset)
    if radial_scale > 0:
        amp = np.array([
            integrate.quad(lambda s: float(line_density(f + s, delta_int, qds_scale, radial_offset))
                           * math.exp(-s / radial_scale) / radial_scale, 0, np.inf, limit=200)[0]
            for f in grid])
    # resolution only matters near the sharp edge, where the profile peaks
    edge = np.abs(grid + radial_offset) <= 2 * delta_int
    step = np.diff(grid[edge]) if edge.sum() > 1 else np.array([np.inf])
    coarse = bool(grid.size > 1 and np.max(step) > delta_int / 4)
    return LineProfile(grid, amp, delta_int, qds_scale, radial_offset, coarse)


@dataclass
class FitResult:
    f0: float
    qds_scale: float
    delta_int: float
    amplitude: float
    covariance: np.ndarray
    errors: dict = field(default_factory=dict)
    T_z: float = float("nan")
    n_iter: int = 0
    residual: float = 0.0


def _model(params, f):
    f0, sigma, delta, amp = params
    return amp * line_density(f - f0, abs(delta), abs(sigma))


def fit_line_center(samples, init: dict, mass: float | None = None, f_abs: float | None = None,
                    restarts: int = 2, max_iter: int = 200) -> FitResult:
    """Weighted least-squares fit of (f0, qds_scale, delta_int, amplitude).

    samples: array-like of rows (detuning, excitation, weight).  init needs keys
    f0, qds_scale, delta_int and optionally amplitude.  A Nelder-Mead stage with
    restarts locates the basin; a trust-region least-squares step polishes it
    and supplies the Jacobian for the covariance.
    """
    data = np.asarray(samples, dtype=float)
    if data.ndim != 2 or data.shape[1] != 3 or data.shape[0] < 8:
        raise FitError("need at least 8 samples of (detuning, excitation, weight)")
    f, y, w = data.T
    if f.min() >= init["f0"] or f.max() <= init["f0"]:
        raise FitError("degenerate design: samples do not straddle the line center")
    sw = np.sqrt(w)
    amp0 = init.get("amplitude")
    if amp0 is None:
        shape = line_density(f - init["f0"], init["delta_int"], init["qds_scale"])
        amp0 = float(np.sum(w * y * shape) / np.sum(w * shape * shape))
    x0 = np.array([init["f0"], init["qds_scale"], init["delta_int"], amp0])
    scale = np.array([init["delta_int"], max(init["qds_scale"], init["delta_int"]), init["delta_int"], abs(amp0)])

    def resid(u):
        return sw * (_model(x0 + u * scale, f) - y)

    def cost(u):
        r = resid(u)
        return float(r @ r)

    u = np.zeros(4)
    n_iter = 0
    for _ in range(restarts + 1):
        res = optimize.minimize(cost, u, method="Nelder-Mead",
                                options={"maxiter": max_iter, "xatol": 1e-6, "fatol": 1e-14})
        n_iter += res.nit
        u = res.x
    ls = optimize.least_squares(resid, u, method="lm", xtol=1e-14, ftol=1e-14, gtol=1e-14,
                                max_nfev=200 * 5)
    n_iter += ls.nfev
    if not ls.success:
        raise FitError(f"fit did not converge: cost {ls.cost:.3e} ({ls.message})")
    p = x0 + ls.x * scale
    J = ls.jac / scale
    dof = max(len(f) - 4, 1)
    s2 = 2 * ls.cost / dof
    try:
        cov = np.linalg.inv(J.T @ J) * s2
    except np.linalg.LinAlgError:
        cov = np.full((4, 4), np.nan)
    errs = dict(zip(("f0", "qds_scale", "delta_int", "amplitude"), np.sqrt(np.abs(np.diag(cov)))))
    sigma = abs(p[1])
    T_z = temperature_from_qds_scale(mass, sigma, f_abs) if mass and f_abs else float("nan")
    return FitResult(p[0], sigma, abs(p[2]), p[3], cov, errs, T_z, n_iter, float(2 * ls.cost))


def synthetic_samples(f0: float, delta_int: float, qds_scale: float, detunings,
                      noise: float = 0.0, rng: np.random.Generator | None = None,
                      amplitude: float = 1.0):
    """Excitation samples proportional to the profile with Gaussian noise.

    The profile is scaled so that its maximum equals amplitude; noise is the
    standard deviation relative to that maximum.
    """
    f = np.asarray(detunings, dtype=float)
    dens = line_density(f - f0, delta_int, qds_scale)
    peak = float(np.max(line_density(np.linspace(-5 * qds_scale - 5 * delta_int, delta_int, 4001),
                                     delta_int, qds_scale)))
    y = amplitude * dens / peak
    if noise:
        rng = rng or np.random.default_rng()
        y = y + rng.normal(0.0, noise * amplitude, size=y.shape)
    return np.column_stack([f, y, np.ones_like(f)])


def statistical_uncertainty(delta_int_fractional: float, cycle_time: float, total_time: float) -> float:
    """Fractional line-center uncertainty delta_int sqrt(tau_c / tau)."""
    if not total_time >= cycle_time > 0:
        raise ValueError("require total_time >= cycle_time > 0")
    return delta_int_fractional * math.sqrt(cycle_time / total_time)
