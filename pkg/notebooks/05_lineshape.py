# %% [markdown]
# # Line shape with thermal Doppler broadening
#
# A thermal axial distribution turns the second-order Doppler shift into a
# one-sided exponential tail.  Convolved with the interrogation Lorentzian the
# profile has a closed form in the exponential integral.

# %%
import numpy as np

from h2ion import CONST
from h2ion.lineshape import (fit_line_center, line_profile, qds_scale_from_temperature,
                             synthetic_samples)

sigma = qds_scale_from_temperature(CONST.mass_H2plus, 4.2, 127e12)
delta = 0.12
print(f"QDS scale at 4.2 K: {sigma:.3f} Hz")
grid = np.linspace(-10 * sigma - 2000 * delta, 2000 * delta, 400001)
for m in (1, 10, 50):
    p = line_profile(m * delta, sigma, grid)
    print(f"delta_int x{m:2d}: peak {p.peak():8.3f} Hz, mean {p.mean():8.3f} Hz, integral {p.integral():.4f}")

# %% [markdown]
# The sharp edge of the profile sits at the unshifted frequency, so a fit that
# models the full shape recovers the line center far better than the mean.

# %%
rng = np.random.default_rng(1)
det = np.concatenate([np.linspace(-5 * sigma - 10 * delta, -2 * delta, 40), np.linspace(-2 * delta, 5 * delta, 40)])
smp = synthetic_samples(0.0, delta, sigma, det, 0.01, rng)
fit = fit_line_center(smp, {"f0": 0.5 * delta, "qds_scale": sigma, "delta_int": 1.5 * delta},
                      mass=CONST.mass_H2plus, f_abs=127e12)
print(f"f0 = {fit.f0:.4f} +- {fit.errors['f0']:.4f} Hz, T_z = {fit.T_z:.2f} K")
