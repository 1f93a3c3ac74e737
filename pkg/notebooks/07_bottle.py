# %% [markdown]
# # Cancelling the axial Doppler shift with a magnetic bottle
#
# A bottle term B2 z^2 shifts a field-sensitive transition by beta B2 z^2.
# For beta B2 > 0 this grows with the axial amplitude as the second-order
# Doppler shift does, but with the opposite sign, so a suitable B2 removes
# the amplitude dependence.

# %%
from h2ion import load_coefficients, state
from h2ion.bottle import (BottleField, axial_period_averaged_shift, cancellation_report, magic_b2,
                          radial_period_averaged_shift)
from h2ion.systematics import TransitionSpec, TrapConfig

table = load_coefficients()
F0 = 127e12
spec = TransitionSpec(state(0, 2, 0.5, 0), state(2, 2, 0.5, 0), F0)
trap = TrapConfig(B0=4.0, nu_z=1e6, nu_plus=30.48e6, nu_minus=16.4e3, T_z=4.2, T_plus=4.2)
rep = cancellation_report(spec, table, trap)
for name, value in rep.rows():
    print(f"{name:28s} {value}")

# %% [markdown]
# At the magic value the averaged shift no longer depends on the amplitude.

# %%
b = BottleField(4.0, rep.magic_B2)
for A in (1e-6, 1e-5, 1e-4):
    print(A, axial_period_averaged_shift(b, rep.beta, F0, 1e6, A),
          axial_period_averaged_shift(BottleField(4.0), rep.beta, F0, 1e6, A))

# %% [markdown]
# With radial frequencies comparable to the axial one the radial shift
# magnitude grows by a factor 3/2.

# %%
nu = 1e6
bb = BottleField(0.2, magic_b2(rep.beta, F0, nu).B2)
with_b = radial_period_averaged_shift(bb, rep.beta, F0, nu, nu, 1.0, 1.0).shift
without = radial_period_averaged_shift(BottleField(0.2), rep.beta, F0, nu, nu, 1.0, 1.0).shift
print(with_b / without)
