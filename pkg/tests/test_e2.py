import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import S
from sympy.physics.quantum.cg import CG

from h2ion import state
from h2ion.e2 import (ForbiddenTransitionError, Geometry, clebsch_gordan, implied_F_if,
                      load_e2_table, rabi_frequency, required_intensity, selection_check,
                      table_consistency, tensor_factor_sq)
from h2ion.systematics import TransitionSpec

E2 = load_e2_table()
G45 = Geometry()


def _spec(lo, up, mn, mn2, ms=0.5):
    return TransitionSpec(state(*lo, ms, mn), state(*up, ms, mn2))


def _ladder(j):
    """J_z, J_+ in the |j m> basis ordered m = j .. -j."""
    m = np.arange(j, -j - 1, -1, dtype=float)
    jp = np.zeros((len(m), len(m)))
    for i in range(1, len(m)):
        jp[i - 1, i] = math.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    return np.diag(m), jp


def brute_force_cg(j1, j2):
    """CG table by explicit coupling: highest-weight states and lowering operators.

    Phases follow Condon-Shortley: <j1 j1; j2 J-j1 | J J> > 0.
    """
    z1, p1 = _ladder(j1)
    z2, p2 = _ladder(j2)
    i1, i2 = np.eye(2 * j1 + 1), np.eye(2 * j2 + 1)
    jz = np.kron(z1, i2) + np.kron(i1, z2)
    jp = np.kron(p1, i2) + np.kron(i1, p2)
    jm = jp.T
    mz = np.diag(jz)
    found = []
    table = {}
    for J in range(j1 + j2, abs(j1 - j2) - 1, -1):
        idx = np.where(np.isclose(mz, J))[0]
        sub = np.zeros((len(mz), len(idx)))
        sub[idx, range(len(idx))] = 1.0
        # candidates in the M = J subspace annihilated by J_+ and orthogonal to found states
        A = jp @ sub
        for v in found:
            A = np.vstack([A, (v @ sub)[None, :]])
        _, _, vt = np.linalg.svd(A)
        top = sub @ vt[-1]
        # phase: component with m1 = j1 (row 0 of the first factor) positive
        pos = j2 - (J - j1)
        if top[pos] < 0:
            top = -top
        vec = top
        for M in range(J, -J - 1, -1):
            found.append(vec)
            for a in range(2 * j1 + 1):
                for b in range(2 * j2 + 1):
                    c = vec[a * (2 * j2 + 1) + b]
                    table[(j1 - a, j2 - b, J, M)] = c
            if M > -J:
                vec = jm @ vec
                vec = vec / np.linalg.norm(vec)
    return table


def test_cg_anchor():
    assert clebsch_gordan(2, 0, 2, 0, 2, 0) == pytest.approx(-math.sqrt(2 / 7), abs=1e-15)
    assert clebsch_gordan(2, 1, 2, 0, 2, 0) == 0.0
    assert clebsch_gordan(2, 3, 2, 0, 2, 3) == 0.0
    assert clebsch_gordan(0, 0, 2, 0, 4, 0) == 0.0


@pytest.mark.parametrize("N", range(0, 5))
@pytest.mark.parametrize("N2", range(0, 5))
def test_cg_brute_force_and_sympy(N, N2):
    if not abs(N - 2) <= N2 <= N + 2:
        return
    table = brute_force_cg(N, 2)
    for M2 in range(-N2, N2 + 1):
        for q in range(-2, 3):
            M = M2 - q
            if abs(M) > N:
                continue
            ours = clebsch_gordan(N, M, 2, q, N2, M2)
            assert ours == pytest.approx(table[(M, q, N2, M2)], abs=1e-10)
            ref = float(CG(S(N), S(M), S(2), S(q), S(N2), S(M2)).doit())
            assert ours == pytest.approx(ref, abs=1e-12)


@pytest.mark.parametrize("N", range(0, 5))
def test_cg_unitarity(N):
    for N2 in range(abs(N - 2), N + 3):
        for M2 in range(-N2, N2 + 1):
            total = sum(clebsch_gordan(N, M2 - q, 2, q, N2, M2) ** 2 for q in range(-2, 3))
            assert total == pytest.approx(1.0, abs=1e-12)
    # completeness over J for fixed (M, q)
    for M in range(-N, N + 1):
        for q in range(-2, 3):
            total = sum(clebsch_gordan(N, M, 2, q, J, M + q) ** 2 for J in range(abs(N - 2), N + 3))
            assert total == pytest.approx(1.0, abs=1e-12)


def test_tensor_factor_anchors():
    assert tensor_factor_sq(0, G45) == pytest.approx(0.25, abs=1e-12)
    assert tensor_factor_sq(1, G45) == pytest.approx(0.0, abs=1e-12)
    assert tensor_factor_sq(-1, G45) == pytest.approx(0.0, abs=1e-12)
    assert tensor_factor_sq(2, G45) == pytest.approx(1 / 24, abs=1e-12)
    assert tensor_factor_sq(-2, G45) == pytest.approx(1 / 24, abs=1e-12)
    assert tensor_factor_sq(0, Geometry(0.0)) == 0.0
    with pytest.raises(ForbiddenTransitionError):
        tensor_factor_sq(3, G45)


def test_tensor_sum_random_linear_polarization():
    rng = np.random.default_rng(7)
    for xi, ga, th in rng.uniform(0, 2 * math.pi, size=(1000, 3)):
        g = Geometry(xi, ga, th, 0.0)
        assert sum(tensor_factor_sq(q, g) for q in range(-2, 3)) == pytest.approx(1 / 3, abs=1e-10)


@given(xi=st.floats(0, math.pi), ga=st.floats(0, 2 * math.pi), th=st.floats(0, 2 * math.pi),
       ph=st.floats(0, 2 * math.pi))
def test_tensor_factors_nonnegative(xi, ga, th, ph):
    g = Geometry(xi, ga, th, ph)
    for q in range(-2, 3):
        assert tensor_factor_sq(q, g) >= -1e-12


@given(xi=st.floats(0, math.pi), ph=st.floats(0, 2 * math.pi))
def test_q0_independent_of_phi_when_theta_zero(xi, ph):
    a = tensor_factor_sq(0, Geometry(xi, 0.3, 0.0, ph))
    b = tensor_factor_sq(0, Geometry(xi, 0.3, 0.0, 0.0))
    assert a == pytest.approx(b, abs=1e-14)


def test_rabi_anchors():
    r0 = rabi_frequency(_spec((0, 2), (2, 2), 0, 0), E2, 1.0, G45)
    r1 = rabi_frequency(_spec((0, 2), (2, 2), 1, 1), E2, 1.0, G45)
    assert r0.omega_rabi == pytest.approx(0.589, rel=0.005)
    assert r1.omega_rabi == pytest.approx(0.295, rel=0.005)
    assert rabi_frequency(_spec((0, 2), (2, 2), 0, 0), E2, 0.0, G45).omega_rabi == 0.0
    # invariant of the result record
    assert r0.omega_rabi == pytest.approx(27.45 * r0.F_if * abs(r0.cg) * r0.tensor_factor, rel=1e-15)


@given(m=st.integers(-2, 2), q=st.integers(-2, 2), xi=st.floats(0, math.pi), ga=st.floats(0, 6.3),
       th=st.floats(0, 6.3))
@settings(max_examples=60)
def test_mirror_components_equal_at_phi_zero(m, q, xi, ga, th):
    if abs(m + q) > 2:
        return
    g = Geometry(xi, ga, th, 0.0)
    a = rabi_frequency(_spec((0, 2), (2, 2), m, m + q), E2, 1.0, g).omega_rabi
    b = rabi_frequency(_spec((0, 2), (2, 2), -m, -m - q), E2, 1.0, g).omega_rabi
    assert a == pytest.approx(b, rel=1e-12, abs=1e-15)


def test_required_intensity_inverse_and_scaling():
    s = _spec((0, 2), (2, 2), 0, 0)
    i1 = required_intensity(s, E2, 0.2, G45)
    assert rabi_frequency(s, E2, i1, G45).omega_rabi == pytest.approx(0.2, rel=1e-12)
    assert required_intensity(s, E2, 0.4, G45) == pytest.approx(4 * i1, rel=1e-12)
    with pytest.raises(ForbiddenTransitionError):
        required_intensity(_spec((0, 2), (2, 2), 0, 1), E2, 0.2, G45)


def _raw_spec(lower, upper):
    # bypass the constructor checks to feed forbidden pairs to selection_check
    s = object.__new__(TransitionSpec)
    object.__setattr__(s, "lower", lower)
    object.__setattr__(s, "upper", upper)
    object.__setattr__(s, "f0", math.nan)
    return s


def test_selection_rules():
    v = selection_check(_spec((0, 2), (2, 2), 0, 0))
    assert v and v.reason == ""
    assert "0 -> 0" in selection_check(_raw_spec(state(0, 0, 0.5, 0), state(2, 0, 0.5, 0))).reason
    far = _raw_spec(state(0, 2, 0.5, -2), state(2, 2, 0.5, 1))
    assert not selection_check(far)
    assert "|q| = 3" in selection_check(far).reason


def test_table_consistency():
    report = table_consistency(E2)
    assert len(report) == len(E2)
    checked = [r for r in report if math.isfinite(r["relative_deviation"])]
    assert checked, "at least one row carries a bundled frequency"
    for r in checked:
        assert abs(r["relative_deviation"]) <= 0.005
    flagged = {r["transition"] for r in report if not r["ok"]}
    assert flagged <= {(0, 2, 6, 2)}
    e = E2[(0, 2, 2, 2)]
    assert implied_F_if(e, 127e12) == pytest.approx(e.F_if, rel=0.01)
