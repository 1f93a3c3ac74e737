# %% [markdown]
# # Level coefficients and constants
#
# The shipped table holds one record per rovibrational level (v, N).  Missing
# values are stored as nan and raise on use, so a computation can never
# silently pick up a placeholder.

# %%
import math

from h2ion import CONST, charge_conjugate, load_coefficients, state
from h2ion.coefficients import MissingCoefficientError, parse_coefficients, serialize_coefficients

table = load_coefficients()
print(table.provenance)
for key in table.keys():
    c = table[key]
    print(key, f"c_e = {c.c_e:.4g} Hz, g_e = {c.g_e:.8f}, g_r = {c.g_r}, chi_s = {c.chi_s}")

# %% [markdown]
# Missing entries raise instead of returning a default.

# %%
try:
    table[(2, 0)].require("chi_s")
except MissingCoefficientError as exc:
    print("raised:", exc)

# %% [markdown]
# Serialization is exact: a round trip reproduces every float bit for bit.

# %%
again = parse_coefficients(serialize_coefficients(table))
same = all(
    (math.isnan(getattr(table[k], f)) and math.isnan(getattr(again[k], f)))
    or getattr(table[k], f) == getattr(again[k], f)
    for k in table.keys() for f in ("c_e", "g_e", "g_t", "g_r", "chi_s", "chi_t", "e14")
)
print("bit-exact round trip:", same)

# %% [markdown]
# Charge conjugation flips M_s and M_N and switches species; applying it twice
# is the identity.

# %%
s = state(0, 2, 0.5, 1)
c = charge_conjugate(s)
print(s, "->", c, "->", charge_conjugate(c))
print("mu_B / h =", CONST.bohr_magneton / CONST.planck / 1e9, "GHz/T")
