"""Geometric quantum discord of three-qubit states.

Closed forms work on the Pauli expectation values of a state. The
brute-force routines work directly on density matrices, minimising the
Hilbert-Schmidt disturbance ``||rho - Pi(rho)||^2`` over projective
measurements, and serve as independent oracles for the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg3 import DEGENERACY_TOL, eig_sym3
from .qstate import (
    SIGMA,
    BlochDecomposition,
    bloch_parts,
    coeff_tensor,
    validate_density,
)

CLAMP_TOL = 1e-10
AXIS_TOL = 1e-12
MEASUREMENT_ORDER = (1, 2, 3)


class DiscordConsistencyError(ArithmeticError):
    """A closed-form discord came out clearly negative."""


@dataclass(frozen=True)
class DiscordReport:
    d1: float
    d2: float
    d3: float
    q: float
    axes: tuple[np.ndarray, np.ndarray, np.ndarray]
    c_prime: np.ndarray
    c_double_prime: np.ndarray
    order: tuple[int, int, int] = MEASUREMENT_ORDER
    # per stage: True when the top eigenvalue of G was (near) degenerate and
    # the axis therefore came from the eigen-solver's tie-breaking convention
    degenerate: tuple[bool, bool, bool] = (False, False, False)
    gaps: tuple[float, float, float] = field(default=(math.inf, math.inf, math.inf))

    def as_dict(self) -> dict:
        return {
            "d1": self.d1,
            "d2": self.d2,
            "d3": self.d3,
            "q": self.q,
            "order": list(self.order),
            "axes": [list(map(float, e)) for e in self.axes],
            "degenerate": list(self.degenerate),
            "gaps": list(self.gaps),
        }


def _bloch(state) -> BlochDecomposition:
    if isinstance(state, BlochDecomposition):
        return state
    a = np.asarray(state)
    if a.shape == (4, 4, 4):
        return bloch_parts(a)
    return bloch_parts(coeff_tensor(a))


def _others(k: int) -> tuple[int, int]:
    if k not in (1, 2, 3):
        raise ValueError(f"qubit index must be 1, 2 or 3, got {k!r}")
    return tuple(q for q in (1, 2, 3) if q != k)


def g_matrix(b, k: int) -> np.ndarray:
    """The 3x3 matrix whose top eigenpair fixes the optimal measurement on qubit ``k``.

    ``G = s s^T + sum_{k'} T T^T + tau`` where each pair matrix ``T`` has
    its rows indexed by qubit ``k`` and ``tau`` contracts the two other
    slots of the three-body tensor.
    """
    b = _bloch(b)
    s = b.s(k)
    g = np.outer(s, s)
    for other in _others(k):
        t = b.pair(k, other)
        g += t @ t.T
    t3 = np.moveaxis(b.T3, k - 1, 0)
    g += np.einsum("aij,bij->ab", t3, t3)
    return 0.5 * (g + g.T)


def _correlation_norm(b: BlochDecomposition, k: int) -> float:
    total = float(b.s(k) @ b.s(k)) + float(np.sum(b.T3**2))
    for other in _others(k):
        total += float(np.sum(b.pair(k, other) ** 2))
    return total


def _clamp(value: float) -> float:
    if value < -CLAMP_TOL:
        raise DiscordConsistencyError(f"closed-form discord is negative: {value:.3e}")
    return max(value, 0.0)


def _gqd_k_full(b: BlochDecomposition, k: int) -> tuple[float, np.ndarray, float]:
    eig = eig_sym3(g_matrix(b, k))
    value = (_correlation_norm(b, k) - eig.values[0]) / 8.0
    return _clamp(value), eig.vectors[:, 0].copy(), float(eig.values[0] - eig.values[1])


def gqd_k(b, k: int) -> tuple[float, np.ndarray]:
    """Discord for a projective measurement on qubit ``k`` and the optimal Bloch axis.

    ``b`` may be a :class:`BlochDecomposition`, a coefficient tensor or an
    8x8 density matrix.
    """
    value, axis, _ = _gqd_k_full(_bloch(b), k)
    return value, axis


def _check_axis(axis) -> np.ndarray:
    e = np.asarray(axis, dtype=float)
    if e.shape != (3,) or abs(np.linalg.norm(e) - 1.0) > AXIS_TOL:
        raise ValueError(f"measurement axis must be a unit 3-vector, got {axis!r}")
    return e


def project_measure(c, axis, qubit: int) -> np.ndarray:
    """Coefficient tensor after a non-selective measurement of ``qubit`` along ``axis``.

    With ``a_1 = (1, e)/sqrt2`` and ``a_2 = (1, -e)/sqrt2`` the measured slot is
    contracted against each ``a_l`` and re-expanded, i.e. multiplied by
    ``a_1 a_1^T + a_2 a_2^T``.
    """
    e = _check_axis(axis)
    _others(qubit)
    c = np.asarray(c, dtype=float)
    a = np.empty((2, 4))
    a[:, 0] = 1.0
    a[0, 1:], a[1, 1:] = e, -e
    a /= math.sqrt(2.0)
    c_front = np.moveaxis(c, qubit - 1, 0)
    b = np.einsum("li,ijk->ljk", a, c_front)
    out = np.einsum("li,ljk->ijk", a, b)
    return np.moveaxis(out, 0, qubit - 1)


def tqc(rho) -> DiscordReport:
    """Successive discords D1, D2, D3 (measuring qubits 1, 2, 3 in turn) and their sum."""
    c = coeff_tensor(validate_density(rho))
    d1, e1, gap1 = _gqd_k_full(bloch_parts(c), 1)
    c1 = project_measure(c, e1, 1)
    d2, e2, gap2 = _gqd_k_full(bloch_parts(c1), 2)
    c2 = project_measure(c1, e2, 2)
    d3, e3, gap3 = _gqd_k_full(bloch_parts(c2), 3)
    gaps = (gap1, gap2, gap3)
    return DiscordReport(
        d1=d1,
        d2=d2,
        d3=d3,
        q=d1 + d2 + d3,
        axes=(e1, e2, e3),
        c_prime=c1,
        c_double_prime=c2,
        degenerate=tuple(g < DEGENERACY_TOL for g in gaps),
        gaps=gaps,
    )


def gqd_two_qubit(rho4) -> float:
    """Two-qubit geometric discord with the measurement on the first qubit."""
    rho4 = validate_density(rho4, dim=4)
    paulis = SIGMA[1:]
    x = np.array([np.trace(rho4 @ np.kron(p, SIGMA[0])).real for p in paulis])
    t = np.array([[np.trace(rho4 @ np.kron(p, q)).real for q in paulis] for p in paulis])
    lam = eig_sym3(np.outer(x, x) + t @ t.T).values[0]
    return _clamp((x @ x + np.sum(t**2) - lam) / 4.0)


# -- brute-force oracles -----------------------------------------------------

def _axis_projectors(axes: np.ndarray) -> np.ndarray:
    """(N, 2, 2, 2) array: projectors (I +/- e.sigma)/2 for each axis."""
    es = np.einsum("na,aij->nij", axes, SIGMA[1:])
    eye = SIGMA[0]
    return 0.5 * np.stack([eye + es, eye - es], axis=1)


def _front(rho: np.ndarray, k: int) -> np.ndarray:
    """Reshape rho to (2, r, 2, r) with qubit ``k`` pulled to the front."""
    dim = rho.shape[0]
    n = int(round(math.log2(dim)))
    t = rho.reshape((2,) * (2 * n))
    order = [k - 1] + [q for q in range(n) if q != k - 1]
    t = t.transpose(order + [n + q for q in order])
    r = dim // 2
    return t.reshape(2, r, 2, r), order


def measure_qubit(rho, axis, k: int) -> np.ndarray:
    """``sum_l (P_l on qubit k) rho (P_l on qubit k)`` as a dense matrix."""
    rho = np.asarray(rho, dtype=complex)
    e = _check_axis(axis)
    dim = rho.shape[0]
    n = int(round(math.log2(dim)))
    if k < 1 or k > n:
        raise ValueError(f"qubit index {k} out of range for {n} qubits")
    t, order = _front(rho, k)
    p = _axis_projectors(e[None, :])[0]
    out = np.einsum("lac,cxdy,ldb->axby", p, t, p)
    inv = np.argsort(order + [n + q for q in order])
    return out.reshape((2,) * (2 * n)).transpose(inv).reshape(dim, dim)


def _disturbance(t: np.ndarray, axes: np.ndarray) -> np.ndarray:
    """``||rho - Pi_e(rho)||^2`` for each axis, measured qubit at the front of ``t``.

    Uses ``Pi_e(rho) = (rho + E rho E) / 2`` with ``E = (e.sigma) (x) I``.
    """
    dim = t.shape[0] * t.shape[1]
    rho = t.reshape(dim, dim)
    e = np.einsum("na,aij->nij", axes, SIGMA[1:])
    full = np.einsum("nab,xy->naxby", e, np.eye(dim // 2)).reshape(len(axes), dim, dim)
    delta = rho[None] - full @ rho @ full
    return 0.25 * np.sum(delta.real**2 + delta.imag**2, axis=(1, 2))


def _sphere(theta, phi) -> np.ndarray:
    return np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta) * np.ones_like(phi)],
        axis=-1,
    )


_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


def _golden(f, lo: float, hi: float, tol: float) -> float:
    a, b = lo, hi
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def gqd_brute_force(
    rho,
    k: int,
    n_theta: int = 64,
    n_phi: int = 128,
    tol: float = 1e-9,
    return_axis: bool = False,
):
    """Minimise ``||rho - Pi_e(rho)||^2`` over measurement axes ``e`` on qubit ``k``.

    A ``n_theta x n_phi`` polar grid locates the best cell, then golden-section
    line searches in a tangent chart around it (Powell direction updates)
    polish the axis to ``tol``. Works for 2- and 3-qubit density matrices.
    """
    if n_theta < 64 or n_phi < 128:
        raise ValueError("grid must be at least 64 polar x 128 azimuthal samples")
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    validate_density(rho, dim=dim)
    t, _ = _front(rho, k)

    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.arange(n_phi) * (2.0 * math.pi / n_phi)
    grid = _sphere(theta[:, None], phi[None, :]).reshape(-1, 3)
    values = _disturbance(t, grid)
    best = int(np.argmin(values))
    e0 = grid[best]

    # tangent chart around the best grid axis
    helper = np.eye(3)[int(np.argmin(np.abs(e0)))]
    t1 = np.cross(e0, helper)
    t1 /= np.linalg.norm(t1)
    t2 = np.cross(e0, t1)

    def axis_at(x):
        v = e0 + x[0] * t1 + x[1] * t2
        return v / np.linalg.norm(v)

    def f(x):
        return float(_disturbance(t, axis_at(x)[None, :])[0])

    h = max(math.pi / (n_theta - 1), 2.0 * math.pi / n_phi)
    x = np.zeros(2)
    fx = f(x)
    dirs = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    for _ in range(60):
        start, f_start = x.copy(), fx
        for d in dirs:
            s = _golden(lambda s: f(x + s * d), -h, h, tol)
            x = x + s * d
        disp = x - start
        step = float(np.linalg.norm(disp))
        if step < tol:
            break
        dnew = disp / step
        s = _golden(lambda s: f(x + s * dnew), -h, h, tol)
        x = x + s * dnew
        dirs = [dirs[1], dnew]
        fx = f(x)
        if f_start - fx < 1e-16:
            break
        h = max(4.0 * step, 100.0 * tol)

    refined = f(x)
    if refined <= values[best]:
        value, axis = refined, axis_at(x)
    else:
        value, axis = float(values[best]), e0
    if return_axis:
        return value, axis
    return value


def tqc_brute_force(rho, axes, **grid) -> tuple[float, float, float]:
    """Successive brute-force discords, measuring earlier qubits along the given ``axes``.

    Intermediate states are built with explicit projector sandwiches on the
    8x8 matrix, not from coefficient tensors.
    """
    rho = validate_density(rho)
    d1 = gqd_brute_force(rho, 1, **grid)
    rho1 = measure_qubit(rho, axes[0], 1)
    d2 = gqd_brute_force(rho1, 2, **grid)
    rho2 = measure_qubit(rho1, axes[1], 2)
    d3 = gqd_brute_force(rho2, 3, **grid)
    return d1, d2, d3


__all__ = [
    "DiscordConsistencyError",
    "DiscordReport",
    "MEASUREMENT_ORDER",
    "g_matrix",
    "gqd_brute_force",
    "gqd_k",
    "gqd_two_qubit",
    "measure_qubit",
    "project_measure",
    "tqc",
    "tqc_brute_force",
]
