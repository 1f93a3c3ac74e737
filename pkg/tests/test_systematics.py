import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from h2ion import CONST, SpinState, load_coefficients, state
from h2ion.spin import build_diagonal_terms, expansion_energy
from h2ion.systematics import (DependentComponentsError, TransitionError, TransitionSpec, TrapConfig,
                               ac_stark_shift, component_combination, cpt_difference_budget,
                               dc_stark_shift, diamagnetic_shift, eqs_shift, field_gradient,
                               magic_field_from_polarizability, magic_magnetic_field, qds_mean,
                               qds_quantum, rotational_zeeman_shift, sensitivity_beta,
                               sensitivity_components, sensitivity_scan, shift_budget,
                               thermalization_time, total_magnetic_shift)
from sensitivity_reference import EXPECTED

TABLE = load_coefficients()
F0 = 127e12
M = CONST.mass_H2plus


def spec(lo, up, ms, mn, mn2, species="matter", f0=F0):
    return TransitionSpec(state(*lo, ms, mn, species=species), state(*up, ms, mn2, species=species), f0)


REF = spec((0, 2), (2, 2), 0.5, 0, 0)


def test_transition_rules():
    with pytest.raises(TransitionError):
        spec((0, 0), (2, 0), 0.5, 0, 0)
    with pytest.raises(TransitionError):
        TransitionSpec(state(0, 2, 0.5, 0), state(2, 2, -0.5, 0))
    with pytest.raises(TransitionError):
        TransitionSpec(state(0, 2, 0.5, 0), state(2, 2, 0.5, 0, species="antimatter"))
    esr = TransitionSpec(state(0, 2, -0.5, 1), state(0, 2, 0.5, 1))
    assert esr.is_esr


def test_trap_config_invariants():
    with pytest.raises(ValueError):
        TrapConfig(B0=0.0)
    with pytest.raises(ValueError):
        TrapConfig(B0=4, nu_z=1e6, nu_plus=30e6, nu_minus=2e6)
    with pytest.raises(ValueError):
        TrapConfig(B0=4, T_z=-1)


def test_rotational_zeeman_anchors():
    s = spec((0, 2), (2, 2), 0.5, 1, 1)
    assert rotational_zeeman_shift(s, TABLE, 4.0) == pytest.approx(0.60e6, rel=0.02)
    assert rotational_zeeman_shift(REF, TABLE, 4.0) == 0.0
    pair = rotational_zeeman_shift(s, TABLE, 4.0) + rotational_zeeman_shift(
        spec((0, 2), (2, 2), 0.5, -1, -1), TABLE, 4.0)
    assert pair == pytest.approx(0.0, abs=1e-9)


def test_dia_para_anchors():
    scalar, tensor = diamagnetic_shift(REF, TABLE, 4.0)
    assert scalar == pytest.approx(38e3, rel=0.05)
    assert tensor == pytest.approx(-4.1e3, rel=0.05)
    assert diamagnetic_shift(REF, TABLE, 0.0) == (0.0, 0.0)


@given(B=st.floats(0.1, 10.0))
def test_dia_quadratic_in_B(B):
    s1, t1 = diamagnetic_shift(REF, TABLE, 1.0)
    s, t = diamagnetic_shift(REF, TABLE, B)
    assert s == pytest.approx(s1 * B * B, rel=1e-12)
    assert t == pytest.approx(t1 * B * B, rel=1e-12)


def test_eqs_anchors():
    assert field_gradient(1e6, M, CONST.elementary_charge) == pytest.approx(8e5, rel=0.05)
    assert eqs_shift(REF, TABLE, 1e6) == pytest.approx(-0.04, rel=0.05)
    assert eqs_shift(spec((0, 0), (2, 2), 0.5, 0, 0), TABLE, 1e6) != 0.0
    with pytest.raises(ValueError):
        eqs_shift(REF, TABLE, 0.0)


def test_dc_stark_orbital_formula():
    # independent evaluation: E_perp = |q| B^2 r / m, shift = -(1/2) d_alpha E^2 / h
    B, r = 4.0, 1e-6
    e2 = (CONST.elementary_charge / M * B * B * r) ** 2
    au = CONST.polarizability_au
    lo, up = TABLE[(0, 2)], TABLE[(2, 2)]
    # purely transverse field, M_N = 0, N = 2: E~^2 = -E^2/2 and the tensor
    # weight (2 M_N^2 - 2N(N+1)/3) = -4 give alpha_eff = alpha_s + 2 alpha_t
    a_lo = lo.alpha_s_dc + 2 * lo.alpha_t_dc
    a_up = up.alpha_s_dc + 2 * up.alpha_t_dc
    expect = -0.5 * (a_up - a_lo) * au * e2 / CONST.planck
    got = dc_stark_shift(REF, TABLE, TrapConfig(B0=B, r_orbital=r))
    assert got == pytest.approx(expect, rel=1e-12, abs=0)
    assert got < 0


def test_dc_stark_thermal_and_zero():
    B = 4.0
    t1 = dc_stark_shift(REF, TABLE, TrapConfig(B0=B, T_plus=1.0))
    t2 = dc_stark_shift(REF, TABLE, TrapConfig(B0=B, T_plus=2.0))
    assert t2 == pytest.approx(2 * t1, rel=1e-12, abs=0)
    # <v^2> = k T / m gives the same field as r_orbital^2 = k T / (m omega_c^2)
    wc = CONST.elementary_charge * B / M
    r = math.sqrt(CONST.boltzmann / (M * wc * wc))
    assert t1 == pytest.approx(dc_stark_shift(REF, TABLE, TrapConfig(B0=B, r_orbital=r)), rel=1e-12, abs=0)
    assert dc_stark_shift(REF, TABLE, TrapConfig(B0=B, T_plus=0.0)) == 0.0
    with pytest.raises(ValueError):
        dc_stark_shift(REF, TABLE, TrapConfig(B0=B))


def test_ac_stark():
    small = ac_stark_shift(REF, TABLE, 0.1)
    assert 1e-7 < abs(small) < 1e-5
    big = ac_stark_shift(spec((0, 2), (3, 2), 0.5, 0, 0), TABLE, 2.5)
    assert big == pytest.approx(-1e-4, rel=0.05, abs=0)
    assert ac_stark_shift(REF, TABLE, 0.0) == 0.0


def test_qds_anchors():
    assert qds_mean(M, (4.2, 0, 0), F0) / F0 == pytest.approx(-1.0e-13, rel=0.05, abs=0)
    assert qds_mean(M, (0.4, 0, 0), F0) / F0 == pytest.approx(-1e-14, rel=0.1, abs=0)
    assert qds_mean(M, (0, 0, 0), F0) == 0.0
    nu_c = CONST.elementary_charge * 4.0 / (2 * math.pi * M)
    assert qds_quantum(M, 1, nu_c, F0) / F0 == pytest.approx(-5e-17, rel=0.05, abs=0)
    # n = 0 leaves the zero-point third of the n = 1 value
    assert qds_quantum(M, 0, nu_c, F0) == pytest.approx(qds_quantum(M, 1, nu_c, F0) / 3, rel=1e-12, abs=0)
    assert qds_quantum(M, 1, 0.0, F0) == 0.0


@given(t=st.lists(st.floats(0, 100), min_size=3, max_size=3), k=st.floats(0.1, 10))
def test_qds_linear_and_inverse_mass(t, k):
    base = qds_mean(M, t, F0)
    assert qds_mean(M, [k * x for x in t], F0) == pytest.approx(k * base, rel=1e-12, abs=1e-300)
    assert qds_mean(k * M, t, F0) == pytest.approx(base / k, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("key", sorted(EXPECTED))
def test_sensitivity_reference_rows(key):
    lo, up, ms2, mn, mn2 = key
    beta_ref, df_ref = EXPECTED[key]
    s = TransitionSpec(SpinState(*lo, Fraction(ms2, 2), mn), SpinState(*up, Fraction(ms2, 2), mn2))
    beta = sensitivity_beta(s, TABLE, 4.0) / 1e3
    df = total_magnetic_shift(s, TABLE, 4.0) / 1e3
    assert abs(beta - beta_ref) <= max(0.01 * abs(beta_ref), 0.05)
    assert abs(df - df_ref) <= max(0.01 * abs(df_ref), 0.2)


def test_sensitivity_components_cover_reference():
    keys = set()
    for lo, up in [((0, 0), (2, 2)), ((0, 2), (2, 2))]:
        for s in sensitivity_components(lo, up):
            keys.add((lo, up, int(2 * s.lower.M_s), s.lower.M_N, s.upper.M_N))
    assert keys == set(EXPECTED)


@pytest.mark.parametrize("B", [2.0, 3.0, 4.0, 5.5, 7.0])
def test_beta_matches_expansion_derivative(B):
    # analytic-expansion oracle: central difference of the strong-field expansion
    def expansion_shift(b):
        out = 0.0
        for sign, st_ in ((1, REF.upper), (-1, REF.lower)):
            c = TABLE[st_.level]
            d = build_diagonal_terms(c, b)
            grp = "lower" if st_.M_s < 0 else "higher"
            out += sign * (expansion_energy(c, b, d, st_.M_F, grp) + d.xi
                           - c.c_e * float(st_.M_s) * st_.M_N)
        return out

    h = 1e-3
    analytic = (expansion_shift(B + h) - expansion_shift(B - h)) / (2 * h)
    assert sensitivity_beta(REF, TABLE, B) == pytest.approx(analytic, rel=0.01)


def test_scan_and_crossings():
    s = spec((0, 2), (2, 2), -0.5, 0, 0)
    rows, zeros = sensitivity_scan(s, TABLE, (1.0, 7.0), 121)
    assert len(rows) == 121 and rows[0][0] == 1.0 and rows[-1][0] == 7.0
    assert len(zeros) >= 1
    for z in zeros:
        assert abs(sensitivity_beta(s, TABLE, z)) < 1e-3
    single, _ = sensitivity_scan(s, TABLE, (4.0, 4.0), 1)
    assert single[0][1] == total_magnetic_shift(s, TABLE, 4.0)
    with pytest.raises(ValueError):
        sensitivity_scan(s, TABLE, (0.01, 4.0), 10)


def test_thermalization_time_scaling():
    t = thermalization_time(M, 5e-3, 1e5, CONST.elementary_charge)
    assert t > 0
    assert thermalization_time(M, 5e-3, 2e5, CONST.elementary_charge) == pytest.approx(t / 2)
    assert thermalization_time(M, 10e-3, 1e5, CONST.elementary_charge) == pytest.approx(4 * t)
    assert thermalization_time(M, 5e-3, math.inf, CONST.elementary_charge) == 0.0


def test_magic_magnetic_field():
    assert magic_magnetic_field(REF, TABLE) is None
    d_alpha = -CONST.planck * F0 / CONST.light_speed**2
    assert magic_field_from_polarizability(d_alpha, F0) == pytest.approx(1.0, rel=1e-12)
    assert magic_field_from_polarizability(d_alpha * 1e-12, F0) is None


def test_budget_additivity_and_qds_dominance():
    trap = TrapConfig(B0=4.0, nu_z=1e6, nu_plus=30.48e6, nu_minus=16.4e3, T_z=4.2, T_plus=4.2)
    b = shift_budget(REF, TABLE, trap, 0.1)
    vals = [v for _, v, _, _ in b.items]
    assert b.total == pytest.approx(math.fsum(vals), rel=1e-15)
    non_mag = {k: v for k, v in b.as_dict().items() if k != "magnetic"}
    assert max(non_mag, key=lambda k: abs(non_mag[k])) == "qds"
    off = shift_budget(REF, TABLE, TrapConfig(B0=4.0, T_plus=0.0), 0.0, ("dc_stark", "light_shift", "qds", "bbr"))
    assert off.total == 0.0


def test_cpt_difference_vanishes():
    trap = TrapConfig(B0=4.0, nu_z=1e6, nu_plus=30.48e6, nu_minus=16.4e3, T_z=4.2, T_plus=4.2)
    d = cpt_difference_budget(REF, TABLE, trap, 0.1)
    for name, v, _, _ in d.items:
        assert abs(v) < 1e-6, name


@pytest.mark.parametrize("B", [1.0, 4.0, 7.0])
def test_c_invariance_of_shifts(B):
    trap = TrapConfig(B0=B, nu_z=1e6, T_z=4.2, r_orbital=1e-6)
    for s in sensitivity_components((0, 2), (2, 2)):
        s = TransitionSpec(s.lower, s.upper, F0)
        c = s.conjugate()
        assert total_magnetic_shift(c, TABLE, B) == pytest.approx(total_magnetic_shift(s, TABLE, B),
                                                                  rel=1e-12, abs=1e-6)
        assert dc_stark_shift(c, TABLE, trap) == dc_stark_shift(s, TABLE, trap)
        assert diamagnetic_shift(c, TABLE, B) == diamagnetic_shift(s, TABLE, B)
        assert eqs_shift(c, TABLE, 1e6) == eqs_shift(s, TABLE, 1e6)


def test_component_combination_round_trip():
    B = 4.0
    comps = [spec((0, 2), (2, 2), ms, m, m) for ms in (0.5, -0.5) for m in (-2, -1, 0, 1, 2)]
    freqs = [((s.lower, s.upper), F0 + total_magnetic_shift(s, TABLE, B)) for s in comps]
    res = component_combination(freqs, "tensor_slot")
    # injected value: difference of the M_N^2 coefficients of the two levels
    gam = build_diagonal_terms(TABLE[(2, 2)], B).gamma - build_diagonal_terms(TABLE[(0, 2)], B).gamma
    # the quadratic fit of exact energies also absorbs the small c_e^2/B mixing curvature
    assert res["tensor_slot"] == pytest.approx(gam, rel=0.05)

    # exact round trip on synthetic data generated from the quadratic model
    inj = 123.456
    synth = [((s.lower, s.upper), 1e3 + 7.0 * s.lower.M_N + inj * s.lower.M_N**2
              + float(s.lower.M_s) * 50 * s.lower.M_N**2) for s in comps]
    assert component_combination(synth, "tensor_slot")["tensor_slot"] == pytest.approx(inj, rel=1e-10)

    pair = [spec((0, 2), (2, 2), 0.5, 1, 1), spec((0, 2), (2, 2), 0.5, -1, -1)]
    f = [((s.lower, s.upper), F0 + total_magnetic_shift(s, TABLE, B)) for s in pair]
    mean = component_combination(f, "rotational_zeeman_mean")["mean"]
    rz = [rotational_zeeman_shift(s, TABLE, B) for s in pair]
    assert abs(mean - F0) < abs(f[0][1] - F0)
    assert rz[0] + rz[1] == pytest.approx(0.0, abs=1e-9)


def test_component_combination_errors():
    s = spec((0, 2), (2, 2), 0.5, 0, 0)
    with pytest.raises(DependentComponentsError):
        component_combination([((s.lower, s.upper), 1.0), ((s.lower, s.upper), 1.0)], "tensor_slot")
    with pytest.raises(DependentComponentsError):
        component_combination([((s.lower, s.upper), 1.0)], "tensor_slot")
    with pytest.raises(ValueError):
        component_combination([((s.lower, s.upper), 1.0),
                               ((state(0, 2, 0.5, 1), state(2, 2, 0.5, 1)), 2.0)], "nope")
