# %% [markdown]
# # Sympathetic cooling in a double well
#
# A Be+ ion and an (anti-)H2+ ion sit in neighbouring wells.  When the two
# axial frequencies match, their Coulomb coupling swaps the motional energy
# in a time set by the separation.  A slow sweep of the Be+ frequency through
# resonance transfers energy adiabatically over a range of amplitudes.

# %%
import math

import numpy as np

from h2ion import CONST
from h2ion.cooling import (CoolingConfig, ParticleState, build_double_well, exchange_time,
                           fitted_exchange_time, integrate, simulate_cooling_batch)

kB = CONST.boltzmann
s0, w = 0.7e-3, 2 * math.pi * 300e3
well = build_double_well(s0, w, w)
tau = exchange_time(well.mass_a, well.mass_b, well.charge_a, well.charge_b, w, s0)[0]
print(f"exchange time from the coupling formula: {tau * 1e3:.2f} ms")

# %% [markdown]
# Resonant exchange between the two ions.

# %%
pair = (ParticleState(well.mass_a, well.charge_a, -0.5 * s0),
        ParticleState(well.mass_b, well.charge_b, 0.5 * s0 + 1e-6))
tr = integrate(pair, well, 50e-9, 1.5 * tau, stride=200)
print(f"fitted from the trajectory: {fitted_exchange_time(tr) * 1e3:.2f} ms")

# %% [markdown]
# The sweep from 270 kHz to 300 kHz cools both species from several kelvin.

# %%
energies = np.array([1.0, 4.0, 8.0, 12.0, 17.0])
for polarity in ("matter", "antimatter"):
    final = simulate_cooling_batch(energies * kB, CoolingConfig(polarity=polarity))
    print(polarity, np.round(final / kB, 4), "K")
