import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from h2ion import CONST, Species, SpinState, charge_conjugate, load_coefficients, sign_factors, state
from h2ion.coefficients import (FIELD_NAMES, CoefficientError, LevelCoefficients,
                                MissingCoefficientError, parse_coefficients, serialize_coefficients)

TABLE = load_coefficients()


def test_constants_signs_and_alpha():
    for name in ("bohr_magneton", "nuclear_magneton", "boltzmann", "planck", "light_speed",
                 "elementary_charge", "bohr_radius", "mass_H2plus", "mass_Be9plus"):
        assert getattr(CONST, name) > 0
    assert CONST.electron_g_free < 0
    assert abs(CONST.fine_structure * 137 - 1) < 0.01
    # consistency of the pinned set: alpha = e^2 / (4 pi eps0 hbar c)
    alpha = CONST.elementary_charge**2 / (4 * math.pi * CONST.vacuum_permittivity
                                         * CONST.reduced_planck * CONST.light_speed)
    assert alpha == pytest.approx(CONST.fine_structure, rel=1e-9)


def test_default_table_levels_and_anchors():
    for key in [(0, 0), (0, 2), (2, 0), (2, 2), (3, 2)]:
        assert key in TABLE
    assert TABLE[(0, 2)].g_r == 0.9198
    assert TABLE[(0, 0)].chi_s == -0.3836419
    assert "h2ion-levels-1" in TABLE.provenance
    # g_e stored as the signed bound-electron g-factor
    assert TABLE[(0, 2)].g_e == pytest.approx(CONST.electron_g_free * (1 - 20.30e-6), rel=1e-15)


def test_missing_level_and_value():
    with pytest.raises(MissingCoefficientError):
        TABLE[(9, 9)]
    with pytest.raises(MissingCoefficientError):
        TABLE[(2, 0)].require("chi_s")


def _row(**over):
    base = dict(v=0, N=0, c_e=0, g_e=-2.0, g_t=0, g_r=0, alpha_s_dc=1, alpha_t_dc=0, alpha_s_ac=1,
                alpha_t_ac=0, chi_s=-0.4, chi_t=0, e14=0, b_F=0, d_1=0)
    base.update(over)
    return "#! g_e = direct\n" + " ".join(FIELD_NAMES) + "\n" + " ".join(str(base[n]) for n in FIELD_NAMES)


def test_invariant_violation_rejected():
    parse_coefficients(_row())
    with pytest.raises(CoefficientError, match="c_e"):
        parse_coefficients(_row(c_e=1.0))
    with pytest.raises(CoefficientError, match="g_r"):
        parse_coefficients(_row(g_r=0.5))
    with pytest.raises(CoefficientError, match="b_F"):
        parse_coefficients(_row(N=2, b_F=1.0))


def test_parse_error_names_line_and_field():
    text = _row().replace("-0.4", "abc")
    with pytest.raises(CoefficientError, match=r":3: field 'chi_s'"):
        parse_coefficients(text)


def test_round_trip_default_table_bit_exact():
    again = parse_coefficients(serialize_coefficients(TABLE))
    for key in TABLE.keys():
        a, b = TABLE[key], again[key]
        for n in FIELD_NAMES:
            x, y = getattr(a, n), getattr(b, n)
            assert (math.isnan(x) and math.isnan(y)) or x == y


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=60, deadline=None)
@given(c_e=finite, g_e=finite, g_t=finite, g_r=finite, chi=finite, e14=finite)
def test_round_trip_arbitrary_values(c_e, g_e, g_t, g_r, chi, e14):
    c = LevelCoefficients(1, 2, c_e, g_e, g_t, g_r, 1.0, 2.0, 3.0, 4.0, chi, -chi, e14, 0.0, 0.0)
    table = TABLE.with_level(c)
    back = parse_coefficients(serialize_coefficients(table))[(1, 2)]
    assert back == c


def test_charge_conjugate_examples():
    s = state(0, 2, 0.5, 1)
    c = charge_conjugate(s)
    assert (c.M_s, c.M_N, c.species) == (Fraction(-1, 2), -1, Species.ANTIMATTER)
    assert charge_conjugate(state(0, 0, 0.5, 0)) == state(0, 0, -0.5, 0, species="antimatter")


@given(v=st.integers(0, 5), N=st.integers(0, 4), up=st.booleans(), data=st.data())
def test_charge_conjugate_involution(v, N, up, data):
    M_N = data.draw(st.integers(-N, N))
    M_I = 0 if N % 2 == 0 else data.draw(st.integers(-1, 1))
    s = SpinState(v, N, Fraction(1, 2) if up else Fraction(-1, 2), M_N, M_I)
    c = charge_conjugate(s)
    assert c.level == s.level
    assert c.M_F == -s.M_F
    assert charge_conjugate(c) == s


def test_sign_factors():
    assert sign_factors("matter") == (1, 1)
    assert sign_factors(Species.ANTIMATTER) == (-1, -1)


def test_spin_state_validation():
    with pytest.raises(ValueError):
        state(0, 2, 0.5, 3)
    with pytest.raises(ValueError):
        SpinState(0, 2, Fraction(1, 2), 0, 1)
    with pytest.raises(ValueError):
        SpinState(0, 2, Fraction(3, 2), 0)
    assert SpinState(0, 1, Fraction(1, 2), 1, 1).M_F == Fraction(5, 2)
