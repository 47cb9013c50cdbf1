"""Zero-temperature amplitude damping with a Lorentzian reservoir.

Times are dimensionless (``gamma0 * t``) at the interface; internally the
decay rate is scaled to one so only ``lambda / gamma0`` matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .linalg3 import min_eig_herm


class NoZerosError(ValueError):
    pass


class AccuracyError(ValueError):
    pass


class DynamicsConsistencyError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ReservoirParams:
    gamma0: float
    lam: float

    def __post_init__(self):
        if not (self.gamma0 > 0 and self.lam > 0):
            raise ValueError(f"gamma0 and lambda must be positive, got {self.gamma0}, {self.lam}")
        if not (math.isfinite(self.gamma0) and math.isfinite(self.lam)):
            raise ValueError("reservoir parameters must be finite")

    @classmethod
    def from_ratio(cls, ratio: float) -> "ReservoirParams":
        """Parameters with ``gamma0 = 1`` and ``lambda = ratio``."""
        return cls(1.0, ratio)

    @property
    def ratio(self) -> float:
        return self.lam / self.gamma0

    @property
    def non_markovian(self) -> bool:
        return 2.0 * self.gamma0 > self.lam

    def kernel(self, tau):
        """Reservoir correlation function ``(gamma0 lambda / 2) exp(-lambda tau)``."""
        return 0.5 * self.gamma0 * self.lam * np.exp(-self.lam * np.asarray(tau, dtype=float))

    def spectral_density(self, omega_detuning):
        """Lorentzian ``J`` as a function of ``omega0 - omega``."""
        w = np.asarray(omega_detuning, dtype=float)
        return self.gamma0 * self.lam**2 / (2.0 * math.pi * (w**2 + self.lam**2))


def _amplitude(t, params: ReservoirParams):
    """Excited-state amplitude; ``p_t`` is its square."""
    t = np.asarray(t, dtype=float)
    lam = params.lam
    disc = 2.0 * params.gamma0 * lam - lam * lam
    if disc > 0:
        d = math.sqrt(disc)
        return np.exp(-0.5 * lam * t) * (np.cos(0.5 * d * t) + (lam / d) * np.sin(0.5 * d * t))
    if disc < 0:
        d = math.sqrt(-disc)
        return np.exp(-0.5 * lam * t) * (np.cosh(0.5 * d * t) + (lam / d) * np.sinh(0.5 * d * t))
    return np.exp(-0.5 * lam * t) * (1.0 + 0.5 * lam * t)


def p_t(t, params: ReservoirParams):
    """Survival function ``P_t`` at time(s) ``t >= 0``.

    Oscillatory branch for ``2 gamma0 > lambda``, the hyperbolic continuation
    for ``2 gamma0 < lambda`` and the critical limit at equality.
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("time must be finite and non-negative")
    out = _amplitude(arr, params) ** 2
    return float(out) if out.ndim == 0 else out


def p_t_zeros(params: ReservoirParams, n_max: int) -> np.ndarray:
    """First ``n_max`` zeros ``2 (n pi - arctan(d / lambda)) / d`` of ``P_t``."""
    if not params.non_markovian:
        raise NoZerosError("P_t has no zeros unless 2 gamma0 > lambda")
    lam = params.lam
    d = math.sqrt(2.0 * params.gamma0 * lam - lam * lam)
    n = np.arange(1, n_max + 1)
    return 2.0 * (n * math.pi - math.atan(d / lam)) / d


def p_t_numeric(params: ReservoirParams, t_max: float, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Solve the memory-kernel equation for the amplitude and return ``(t, P_t)``.

    ``G' = -int_0^t f(t - s) G(s) ds`` with ``G(0) = 1`` is discretised with
    the trapezoidal rule both in the convolution and in the outer
    integration. The exponential kernel lets the trapezoidal convolution sum
    be carried forward recursively, so each step is O(1). ``P_t = G^2``.
    """
    if dt > 1e-3 / max(params.gamma0, params.lam):
        raise AccuracyError(f"dt={dt} too coarse; need dt <= 1e-3 / max(gamma0, lambda)")
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    n = int(math.ceil(t_max / dt - 1e-9))
    times = np.arange(n + 1) * dt
    amp = 0.5 * params.gamma0 * params.lam
    decay = math.exp(-params.lam * dt)

    g = np.empty(n + 1)
    g[0] = 1.0
    conv = 0.0  # trapezoidal int_0^{t_n} exp(-lam (t_n - s)) G(s) ds
    half = 0.5 * dt
    for i in range(n):
        # conv_{i+1} = decay * conv_i + half * (decay * g_i + g_{i+1})
        base = decay * conv + half * decay * g[i]
        # g_{i+1} = g_i - half * amp * (conv_i + conv_{i+1}); linear in g_{i+1}
        g_next = (g[i] - half * amp * (conv + base)) / (1.0 + half * amp * half)
        conv = base + half * g_next
        g[i + 1] = g_next
    return times, g**2


# -- single qubit ------------------------------------------------------------

def _check_p(p: float) -> float:
    p = float(p)
    if not (-1e-12 <= p <= 1.0 + 1e-12):
        raise ValueError(f"survival probability must lie in [0, 1], got {p}")
    return min(max(p, 0.0), 1.0)


def evolve_single(rho2, p: float) -> np.ndarray:
    """Apply the damping map to a qubit in the (|1>, |0>) ordering."""
    p = _check_p(p)
    r = np.asarray(rho2, dtype=complex)
    sq = math.sqrt(p)
    return np.array(
        [
            [p * r[0, 0], sq * r[0, 1]],
            [sq * r[1, 0], r[1, 1] + (1.0 - p) * r[0, 0]],
        ]
    )


def kraus_single(p: float) -> tuple[np.ndarray, np.ndarray]:
    p = _check_p(p)
    k0 = np.array([[math.sqrt(p), 0.0], [0.0, 1.0]])
    k1 = np.array([[0.0, 0.0], [math.sqrt(1.0 - p), 0.0]])
    return k0, k1


def kraus_oracle(rho0, p: float) -> np.ndarray:
    """Independent route: sum the eight product Kraus terms."""
    ks = kraus_single(p)
    rho0 = np.asarray(rho0, dtype=complex)
    out = np.zeros((8, 8), dtype=complex)
    for a in ks:
        for b in ks:
            for c in ks:
                k = np.kron(np.kron(a, b), c)
                out += k @ rho0 @ k.T
    return out


# -- three qubits, element by element -----------------------------------------
#
# Each rule maps an upper-triangle element (1-based, basis |1>=|111> ...
# |8>=|000>) to a list of (source_row, source_col, n_sqrtP, n_decay) terms,
# contributing sqrt(P)^n_sqrtP * (1 - P)^n_decay * rho_source(0).

Rule = tuple[int, int, int, int]

DIAGONAL_RULES: dict[tuple[int, int], list[Rule]] = {
    (1, 1): [(1, 1, 6, 0)],
    (2, 2): [(2, 2, 4, 0), (1, 1, 4, 1)],
    (3, 3): [(3, 3, 4, 0), (1, 1, 4, 1)],
    (4, 4): [(4, 4, 2, 0), (3, 3, 2, 1), (2, 2, 2, 1), (1, 1, 2, 2)],
    (5, 5): [(5, 5, 4, 0), (1, 1, 4, 1)],
    (6, 6): [(6, 6, 2, 0), (5, 5, 2, 1), (2, 2, 2, 1), (1, 1, 2, 2)],
    (7, 7): [(7, 7, 2, 0), (5, 5, 2, 1), (3, 3, 2, 1), (1, 1, 2, 2)],
    (8, 8): [
        (8, 8, 0, 0),
        (7, 7, 0, 1), (6, 6, 0, 1), (4, 4, 0, 1),
        (5, 5, 0, 2), (3, 3, 0, 2), (2, 2, 0, 2),
        (1, 1, 0, 3),
    ],
}

OFF_DIAGONAL_RULES: dict[tuple[int, int], list[Rule]] = {
    (1, 2): [(1, 2, 5, 0)],
    (1, 3): [(1, 3, 5, 0)],
    (1, 4): [(1, 4, 4, 0)],
    (1, 5): [(1, 5, 5, 0)],
    (1, 6): [(1, 6, 4, 0)],
    (1, 7): [(1, 7, 4, 0)],
    (1, 8): [(1, 8, 3, 0)],
    (2, 3): [(2, 3, 4, 0)],
    (2, 4): [(2, 4, 3, 0), (1, 3, 3, 1)],
    (2, 5): [(2, 5, 4, 0)],
    (2, 6): [(2, 6, 3, 0), (1, 5, 3, 1)],
    (2, 7): [(2, 7, 3, 0)],
    (2, 8): [(2, 8, 2, 0), (1, 7, 2, 1)],
    (3, 4): [(3, 4, 3, 0), (1, 2, 3, 1)],
    (3, 5): [(3, 5, 4, 0)],
    (3, 6): [(3, 6, 3, 0)],
    (3, 7): [(3, 7, 3, 0), (1, 5, 3, 1)],
    (3, 8): [(3, 8, 2, 0), (1, 6, 2, 1)],
    (4, 5): [(4, 5, 3, 0)],
    (4, 6): [(4, 6, 2, 0), (3, 5, 2, 1)],
    (4, 7): [(4, 7, 2, 0), (2, 5, 2, 1)],
    (4, 8): [(4, 8, 1, 0), (3, 7, 1, 1), (2, 6, 1, 1), (1, 5, 1, 2)],
    (5, 6): [(1, 2, 3, 1), (5, 6, 3, 0)],
    (5, 7): [(1, 3, 3, 1), (5, 7, 3, 0)],
    (5, 8): [(5, 8, 2, 0), (1, 4, 2, 1)],
    (6, 7): [(6, 7, 2, 0), (2, 3, 2, 1)],
    (6, 8): [(1, 3, 1, 2), (2, 4, 1, 1), (5, 7, 1, 1), (6, 8, 1, 0)],
    (7, 8): [(1, 2, 1, 2), (3, 4, 1, 1), (5, 6, 1, 1), (7, 8, 1, 0)],
}

EVOLUTION_RULES: dict[tuple[int, int], list[Rule]] = {**DIAGONAL_RULES, **OFF_DIAGONAL_RULES}


def evolve_three(
    rho0,
    p: float,
    rules: Mapping[tuple[int, int], list[Rule]] = EVOLUTION_RULES,
    check: bool = True,
) -> np.ndarray:
    """Evolve a three-qubit state element by element under independent damping.

    ``rules`` defaults to the closed-form table for the 8 diagonal and 28
    upper-triangle elements; the lower triangle follows by Hermiticity.
    """
    p = _check_p(p)
    rho0 = np.asarray(rho0, dtype=complex)
    sq = math.sqrt(p)
    q = 1.0 - p
    out = np.zeros((8, 8), dtype=complex)
    for (i, j), terms in rules.items():
        val = 0j
        for si, sj, n_sq, n_q in terms:
            val += sq**n_sq * q**n_q * rho0[si - 1, sj - 1]
        if i == j:
            out[i - 1, i - 1] = val.real
        else:
            out[i - 1, j - 1] = val
            out[j - 1, i - 1] = val.conjugate()
    if check:
        lam = min_eig_herm(out)
        if lam < -1e-9:
            raise DynamicsConsistencyError(f"evolved state is not PSD (min eigenvalue {lam:.3e})")
    return out


__all__ = [
    "AccuracyError",
    "DynamicsConsistencyError",
    "EVOLUTION_RULES",
    "NoZerosError",
    "ReservoirParams",
    "evolve_single",
    "evolve_three",
    "kraus_oracle",
    "kraus_single",
    "p_t",
    "p_t_numeric",
    "p_t_zeros",
]
