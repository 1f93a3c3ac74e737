# %% [markdown]
# # Systematic shifts of the reference transition
#
# Reference: (v, N) = (0, 2) -> (2, 2), M_s = +1/2, M_N = M_N' = 0, near 127 THz.

# %%
from h2ion import CONST, load_coefficients, state
from h2ion.systematics import (TransitionSpec, TrapConfig, cpt_difference_budget, diamagnetic_shift,
                               eqs_shift, qds_mean, sensitivity_beta, sensitivity_components,
                               sensitivity_scan, shift_budget, total_magnetic_shift)

table = load_coefficients()
F0 = 127e12
ref = TransitionSpec(state(0, 2, 0.5, 0), state(2, 2, 0.5, 0), F0)
trap = TrapConfig(B0=4.0, nu_z=1e6, nu_plus=30.48e6, nu_minus=16.4e3, T_z=4.2, T_plus=4.2)

# %% [markdown]
# Field sensitivity of every spin component at 4 T.

# %%
for s in sensitivity_components((0, 2), (2, 2))[:8]:
    print(f"{str(s):40s} beta = {sensitivity_beta(s, table, 4.0) / 1e3:9.3f} kHz/T, "
          f"delta_f = {total_magnetic_shift(s, table, 4.0) / 1e3:10.3f} kHz")

# %% [markdown]
# Fields where beta vanishes for the M_N = 0 components.

# %%
for lo, up in (((0, 0), (2, 2)), ((0, 2), (2, 2))):
    for s in sensitivity_components(lo, up):
        if s.lower.M_N == 0 and s.upper.M_N == 0:
            _, zeros = sensitivity_scan(s, table, (1.0, 7.0), 121)
            print(s, [round(b, 4) for b in zeros])

# %% [markdown]
# Individual shifts and the full budget.

# %%
print("dia/para (scalar, tensor):", diamagnetic_shift(ref, table, 4.0))
print("EQS at 1 MHz:", eqs_shift(ref, table, 1e6), "Hz")
print("QDS at 4.2 K:", qds_mean(CONST.mass_H2plus, (4.2, 0, 0), F0) / F0)
budget = shift_budget(ref, table, trap, 0.1)
for row in budget.rows():
    print(row)
print("matter - antimatter:", cpt_difference_budget(ref, table, trap, 0.1).total, "Hz")
