import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcorr3.discord import gqd_k, tqc
from qcorr3.qstate import validate_density
from qcorr3.states import GhzSpec, NormalizationError, WSpec, make_ghz, make_state, make_w


def test_ghz_examples():
    rho = make_ghz(GhzSpec.from_alpha_sq(0.5))
    assert rho[0, 0] == pytest.approx(0.5) and rho[7, 7] == pytest.approx(0.5)
    assert rho[0, 7] == pytest.approx(0.5)
    assert gqd_k(rho, 1)[0] == pytest.approx(0.5, abs=1e-12)
    np.testing.assert_allclose(make_ghz(GhzSpec.from_alpha_sq(0.5, r=0.0)), np.eye(8) / 8, atol=1e-15)
    ground = make_ghz(GhzSpec(1.0, 0.0))
    assert ground[7, 7] == 1.0
    assert tqc(ground).q == 0.0


def test_w_examples():
    rho = make_w(WSpec.from_alpha_sq(1 / 3))
    for idx in (6, 5, 3):  # |001>, |010>, |100>
        assert rho[idx, idx] == pytest.approx(1 / 3)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
    assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(make_w(WSpec.from_alpha_sq(1 / 3, r=0.0)), np.eye(8) / 8, atol=1e-15)


def test_phases_land_on_the_right_elements():
    rho = make_w(WSpec.from_alpha_sq(1 / 3, delta=0.7, epsilon=-1.1))
    # rho[|001>, |010>] = alpha * conj(beta)
    assert rho[6, 5] == pytest.approx(np.exp(-0.7j) / 3, abs=1e-15)
    assert rho[6, 3] == pytest.approx(np.exp(1.1j) / 3, abs=1e-15)
    ghz = make_ghz(GhzSpec.from_alpha_sq(0.5, delta=0.4))
    assert ghz[0, 7] == pytest.approx(np.exp(0.4j) / 2, abs=1e-15)


def test_mixed_purity_example():
    rho = make_w(WSpec.from_alpha_sq(1 / 3, r=0.5))
    # r^2 + 2 r (1 - r) / 8 + (1 - r)^2 / 8 expanded by hand
    assert np.trace(rho @ rho).real == pytest.approx(0.25 + 0.0625 + 0.03125, abs=1e-12)
    assert np.trace(rho @ rho).real == pytest.approx(0.34375, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["ghz", "w"]), st.floats(0, 1), st.floats(0, 1), st.floats(-7, 7))
def test_purity_identity(family, alpha_sq, r, delta):
    rho = make_state(family, alpha_sq, r=r, delta=delta)
    assert np.trace(rho @ rho).real == pytest.approx(r**2 + (1 - r**2) / 8, abs=1e-12)


def test_grid_validity():
    for family in ("ghz", "w"):
        for a in np.linspace(0, 1, 20):
            for r in np.linspace(0, 1, 20):
                validate_density(make_state(family, float(a), r=float(r)))


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 2 * math.pi))
def test_phase_covariance(alpha_sq, r, delta):
    for family in ("ghz", "w"):
        base = make_state(family, alpha_sq, r=r)
        shifted = make_state(family, alpha_sq, r=r, delta=delta, epsilon=0.5 * delta)
        np.testing.assert_allclose(np.linalg.eigvalsh(base), np.linalg.eigvalsh(shifted), atol=1e-12)
        assert gqd_k(base, 1)[0] == pytest.approx(gqd_k(shifted, 1)[0], abs=1e-10)


def test_normalization_errors():
    with pytest.raises(NormalizationError):
        GhzSpec(0.5, 0.5)
    with pytest.raises(NormalizationError):
        WSpec(0.5, 0.5, 0.5)
    with pytest.raises(NormalizationError):
        GhzSpec(1.0, 0.0, r=1.2)
    with pytest.raises(ValueError):
        make_state("cluster", 0.5)
