# %% [markdown]
# # Spin structure of the N = 2 levels
#
# For N = 2 the 10 x 10 spin Hamiltonian splits into blocks of fixed
# M_F = M_s + M_N.  The stretched states are 1 x 1 blocks and the rest are
# 2 x 2 blocks with a closed-form solution.

# %%
import numpy as np

from h2ion import load_coefficients, charge_conjugate
from h2ion.spin import (build_diagonal_terms, expansion_energy, full_matrix, level_energy,
                        para_levels)

table = load_coefficients()
c = table[(0, 2)]
B = 4.0
d = build_diagonal_terms(c, B)
levels = para_levels(c, B, d)
for lv in levels:
    print(f"{lv.label}  M_F = {str(lv.M_F):>5}  E = {lv.energy / 1e9:+.6f} GHz")

# %% [markdown]
# The closed form agrees with a dense eigenvalue solver.

# %%
exact = np.sort([lv.energy for lv in levels])
dense = np.linalg.eigvalsh(full_matrix(d))
print("max |closed form - eigvalsh| =", np.max(np.abs(exact - dense)), "Hz")

# %% [markdown]
# The strong-field expansion is accurate to a few Hz at 4 T and degrades as
# the field drops.

# %%
for B in (0.5, 2.0, 4.0, 7.0):
    d = build_diagonal_terms(c, B)
    worst = max(abs(lv.energy - expansion_energy(c, B, d, lv.M_F, "lower" if lv.label.M_s < 0 else "higher"))
                for lv in para_levels(c, B, d))
    print(f"B = {B:3.1f} T: max |exact - expansion| = {worst:9.2f} Hz")

# %% [markdown]
# Matter and antimatter levels coincide once the labels are conjugated.

# %%
for lv in levels[:3]:
    s = lv.label
    print(s, level_energy(s, c, 4.0) - level_energy(charge_conjugate(s), c, 4.0))
