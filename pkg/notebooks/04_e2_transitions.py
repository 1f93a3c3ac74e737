# %% [markdown]
# # Quadrupole transition rates
#
# The Rabi frequency is the product of the tabulated radial factor, a
# Clebsch-Gordan coefficient and a geometric tensor factor set by the laser
# polarization and direction relative to the field.

# %%
import math

from h2ion import state
from h2ion.e2 import (Geometry, clebsch_gordan, load_e2_table, rabi_frequency, required_intensity,
                      table_consistency, tensor_factor_sq)
from h2ion.systematics import TransitionSpec

e2 = load_e2_table()
g = Geometry()  # 45 degree incidence
print("tensor factors |T_q|^2:", [round(tensor_factor_sq(q, g), 6) for q in range(-2, 3)])
print("<2 0; 2 0 | 2 0> =", clebsch_gordan(2, 0, 2, 0, 2, 0), "=", -math.sqrt(2 / 7))

# %% [markdown]
# Rates per sqrt(W/m^2) for the M_N -> M_N components of (0,2) -> (2,2).

# %%
for mn in range(-2, 3):
    spec = TransitionSpec(state(0, 2, 0.5, mn), state(2, 2, 0.5, mn))
    print(mn, round(rabi_frequency(spec, e2, 1.0, g).omega_rabi, 4))

# %% [markdown]
# Intensity for a 0.2 rad/s Rabi frequency.

# %%
for upper in ((2, 2), (3, 2)):
    spec = TransitionSpec(state(0, 2, 0.5, 0), state(*upper, 0.5, 0))
    print(upper, f"{required_intensity(spec, e2, 0.2, g):.3f} W/m^2")

# %% [markdown]
# Rows whose radial factor disagrees with the matrix element and frequency.

# %%
for row in table_consistency(e2):
    if not row["ok"]:
        print(row)
