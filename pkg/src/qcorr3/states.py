"""GHZ-like and W-like initial states mixed with white noise."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .qstate import ket

NORM_TOL = 1e-12


class NormalizationError(ValueError):
    pass


def _check_r(r: float) -> None:
    if not 0.0 <= r <= 1.0:
        raise NormalizationError(f"purity r must lie in [0, 1], got {r}")


@dataclass(frozen=True)
class GhzSpec:
    """``alpha |000> + beta_abs e^{i delta} |111>``."""

    alpha: float
    beta_abs: float
    delta: float = 0.0
    r: float = 1.0

    def __post_init__(self):
        norm = self.alpha**2 + self.beta_abs**2
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"alpha^2 + |beta|^2 = {norm!r}, expected 1")
        _check_r(self.r)

    @classmethod
    def from_alpha_sq(cls, alpha_sq: float, delta: float = 0.0, r: float = 1.0) -> "GhzSpec":
        return cls(math.sqrt(alpha_sq), math.sqrt(max(1.0 - alpha_sq, 0.0)), delta, r)


@dataclass(frozen=True)
class WSpec:
    """``alpha |001> + beta_abs e^{i delta} |010> + eta_abs e^{i epsilon} |100>``."""

    alpha: float
    beta_abs: float
    eta_abs: float
    delta: float = 0.0
    epsilon: float = 0.0
    r: float = 1.0

    def __post_init__(self):
        norm = self.alpha**2 + self.beta_abs**2 + self.eta_abs**2
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"alpha^2 + |beta|^2 + |eta|^2 = {norm!r}, expected 1")
        _check_r(self.r)

    @classmethod
    def from_alpha_sq(
        cls, alpha_sq: float, delta: float = 0.0, epsilon: float = 0.0, r: float = 1.0
    ) -> "WSpec":
        """Remaining weight split evenly between ``|010>`` and ``|100>``."""
        rest = math.sqrt(max(1.0 - alpha_sq, 0.0) / 2.0)
        return cls(math.sqrt(alpha_sq), rest, rest, delta, epsilon, r)


def _mix(psi: np.ndarray, r: float) -> np.ndarray:
    rho = r * np.outer(psi, psi.conj()) + (1.0 - r) / 8.0 * np.eye(8)
    return 0.5 * (rho + rho.conj().T)


def make_ghz(spec: GhzSpec) -> np.ndarray:
    psi = spec.alpha * ket("000") + spec.beta_abs * cmath.exp(1j * spec.delta) * ket("111")
    return _mix(psi, spec.r)


def make_w(spec: WSpec) -> np.ndarray:
    psi = (
        spec.alpha * ket("001")
        + spec.beta_abs * cmath.exp(1j * spec.delta) * ket("010")
        + spec.eta_abs * cmath.exp(1j * spec.epsilon) * ket("100")
    )
    return _mix(psi, spec.r)


def make_state(family: str, alpha_sq: float, r: float = 1.0, delta: float = 0.0, epsilon: float = 0.0) -> np.ndarray:
    """Initial state of either family from the squared amplitude of its first ket."""
    if family == "ghz":
        return make_ghz(GhzSpec.from_alpha_sq(alpha_sq, delta=delta, r=r))
    if family == "w":
        return make_w(WSpec.from_alpha_sq(alpha_sq, delta=delta, epsilon=epsilon, r=r))
    raise ValueError(f"unknown state family {family!r}")


DEFAULT_ALPHA_SQ = {"ghz": 0.5, "w": 1.0 / 3.0}
