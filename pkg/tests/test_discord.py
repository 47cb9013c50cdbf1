import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bell_rho, classical_quantum, embed_front, ghz_rho, local_unitary
from qcorr3.discord import (
    DiscordConsistencyError,
    g_matrix,
    gqd_brute_force,
    gqd_k,
    gqd_two_qubit,
    measure_qubit,
    project_measure,
    tqc,
    tqc_brute_force,
)
from qcorr3.qstate import bloch_parts, coeff_tensor, projector, random_density, rho_from_coeff

# Paulis in the excited-first (|1>, |0>) ordering, written out independently.
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PY = np.array([[0, 1j], [-1j, 0]], dtype=complex)
PZ = np.diag([-1, 1]).astype(complex)


def sandwich(rho, axis, k):
    """Non-selective projective measurement of qubit k via explicit 8x8 projectors."""
    es = axis[0] * PX + axis[1] * PY + axis[2] * PZ
    out = np.zeros((8, 8), dtype=complex)
    for sign in (1, -1):
        p = 0.5 * (np.eye(2) + sign * es)
        big = embed_front(np.kron(p, np.eye(4)), k)
        out += big @ rho @ big
    return out


def random_axis(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def test_ghz_g_matrix_and_value():
    rho = ghz_rho()
    for k in (1, 2, 3):
        np.testing.assert_allclose(g_matrix(rho, k), 2 * np.eye(3), atol=1e-14)
        value, axis = gqd_k(rho, k)
        assert value == pytest.approx(0.5, abs=1e-14)
        assert np.linalg.norm(axis) == pytest.approx(1.0)


def test_ground_state_g_matrix_and_value():
    rho = projector("000")
    expected = np.zeros((3, 3))
    expected[2, 2] = 4
    np.testing.assert_allclose(g_matrix(rho, 1), expected, atol=1e-14)
    value, axis = gqd_k(rho, 1)
    assert value == 0.0
    np.testing.assert_allclose(axis, [0, 0, 1], atol=1e-14)


def test_maximally_mixed_value():
    value, _ = gqd_k(np.eye(8) / 8, 2)
    assert value == 0.0


def test_ghz_brute_force():
    assert gqd_brute_force(ghz_rho(), 1) == pytest.approx(0.5, abs=1e-9)


def test_bell_pair():
    assert gqd_two_qubit(bell_rho()) == pytest.approx(0.5, abs=1e-14)
    assert gqd_brute_force(bell_rho(), 1) == pytest.approx(0.5, abs=1e-9)


def test_two_qubit_formula_matches_brute_force(rng):
    for _ in range(5):
        rho = random_density(rng, dim=4)
        assert abs(gqd_two_qubit(rho) - gqd_brute_force(rho, 1)) < 1e-7


def test_accepts_all_input_forms(rng):
    rho = random_density(rng)
    c = coeff_tensor(rho)
    values = [gqd_k(x, 2)[0] for x in (rho, c, bloch_parts(c))]
    assert values[0] == values[1] == values[2]


def test_rejects_bad_qubit(rng):
    with pytest.raises(ValueError):
        gqd_k(random_density(rng), 4)


def test_clamp_rule():
    # the top eigenvalue never exceeds the trace, so negatives come only from rounding
    from qcorr3.discord import _clamp

    assert _clamp(-5e-11) == 0.0
    assert _clamp(0.25) == 0.25
    with pytest.raises(DiscordConsistencyError):
        _clamp(-1e-9)


def test_project_measure_matches_sandwich(rng):
    for _ in range(100):
        rho = random_density(rng)
        e = random_axis(rng)
        for k in (1, 2, 3):
            via_tensor = rho_from_coeff(project_measure(coeff_tensor(rho), e, k))
            assert np.max(np.abs(via_tensor - sandwich(rho, e, k))) < 1e-12
            assert np.max(np.abs(measure_qubit(rho, e, k) - sandwich(rho, e, k))) < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2, 3]))
def test_project_measure_idempotent(seed, k):
    rng = np.random.default_rng(seed)
    c = coeff_tensor(random_density(rng))
    e = random_axis(rng)
    once = project_measure(c, e, k)
    np.testing.assert_allclose(project_measure(once, e, k), once, atol=1e-14)
    # the identity component is never touched
    assert once[0, 0, 0] == pytest.approx(c[0, 0, 0], abs=1e-15)


def test_project_measure_leaves_diagonal_states():
    for bits in ("000", "101", "110"):
        c = coeff_tensor(projector(bits))
        np.testing.assert_allclose(project_measure(c, [0, 0, 1], 1), c, atol=1e-15)
    c = coeff_tensor(np.eye(8) / 8)
    np.testing.assert_allclose(project_measure(c, [1, 0, 0], 3), c, atol=1e-15)


def test_project_measure_rejects_non_unit_axis(rng):
    with pytest.raises(ValueError):
        project_measure(coeff_tensor(random_density(rng)), [1, 1, 0], 1)


def test_zero_on_classical_quantum_states(rng):
    for _ in range(50):
        for k in (1, 2, 3):
            value, _ = gqd_k(classical_quantum(rng, k), k)
            assert value < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng)
    u = local_unitary(rng)
    rotated = u @ rho @ u.conj().T
    for k in (1, 2, 3):
        assert gqd_k(rho, k)[0] == pytest.approx(gqd_k(rotated, k)[0], abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_bounds_and_axis(seed):
    rho = random_density(np.random.default_rng(seed))
    for k in (1, 2, 3):
        value, axis = gqd_k(rho, k)
        assert 0.0 <= value <= 1.0
        assert abs(np.linalg.norm(axis) - 1) < 1e-12


def test_closed_form_is_the_minimum(rng):
    # the brute-force search can only land at or above the optimum
    for _ in range(5):
        rho = random_density(rng)
        for k in (1, 2, 3):
            assert gqd_brute_force(rho, k) >= gqd_k(rho, k)[0] - 1e-6


def test_brute_force_grid_floor(rng):
    with pytest.raises(ValueError):
        gqd_brute_force(random_density(rng), 1, n_theta=32)


def test_tqc_examples():
    report = tqc(ghz_rho())
    assert report.d1 == pytest.approx(0.5, abs=1e-14)
    assert report.q == pytest.approx(report.d1 + report.d2 + report.d3)
    zero = tqc(projector("000"))
    assert zero.q == 0.0
    mixed = tqc(np.eye(8) / 8)
    assert mixed.q == pytest.approx(0.0, abs=1e-15)
    assert mixed.degenerate == (True, True, True)


def test_tqc_report_fields(rng):
    report = tqc(random_density(rng))
    assert report.order == (1, 2, 3)
    d = report.as_dict()
    assert set(d) >= {"d1", "d2", "d3", "q", "axes", "order"}
    assert len(d["axes"]) == 3


def test_tqc_matches_brute_force(rng):
    for rho in (ghz_rho(), random_density(rng), random_density(rng, rank=1)):
        report = tqc(rho)
        bf = tqc_brute_force(rho, report.axes)
        for got, want in zip((report.d1, report.d2, report.d3), bf):
            assert abs(got - want) < 1e-6


def test_post_measurement_classicality(rng):
    for _ in range(20):
        report = tqc(random_density(rng))
        b2 = bloch_parts(report.c_double_prime)
        assert gqd_k(b2, 1)[0] < 1e-8
        assert gqd_k(b2, 2)[0] < 1e-8


def test_pure_ghz_family_phase_invariance():
    for delta in np.linspace(0, 2 * math.pi, 7):
        psi = np.zeros(8, dtype=complex)
        psi[7] = 1 / math.sqrt(2)
        psi[0] = np.exp(1j * delta) / math.sqrt(2)
        assert gqd_k(np.outer(psi, psi.conj()), 1)[0] == pytest.approx(0.5, abs=1e-13)
