"""Small dense eigenproblems: cyclic Jacobi for 3x3 real symmetric matrices
and a minimum-eigenvalue check for small Hermitian matrices."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 50
DEGENERACY_TOL = 1e-10
HERMITIAN_TOL = 1e-12


class InvalidInputError(ValueError):
    pass


class EigenPair3(NamedTuple):
    values: np.ndarray  # (3,), descending
    vectors: np.ndarray  # (3, 3), column i pairs with values[i]


def _as_sym3(m) -> list[list[float]]:
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise InvalidInputError(f"expected a 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix has non-finite entries")
    # symmetrize from the upper triangle so the rotation loop sees exact symmetry
    return [[float(a[min(i, j), max(i, j)]) for j in range(3)] for i in range(3)]


def eig_sym3(m) -> EigenPair3:
    """Eigendecomposition of a real symmetric 3x3 matrix by cyclic Jacobi.

    Eigenvalues are returned in descending order. Values closer than
    ``DEGENERACY_TOL * max(1, |m|)`` are treated as tied and keep Jacobi's
    native (diagonal-position) order, so near-degenerate inputs do not flip
    their returned basis on rounding noise. Each eigenvector is signed so
    its first component with magnitude above 1e-12 is positive.
    """
    a = _as_sym3(m)
    v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    scale = math.sqrt(sum(a[i][j] ** 2 for i in range(3) for j in range(3)))

    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(2.0 * (a[0][1] ** 2 + a[0][2] ** 2 + a[1][2] ** 2))
        if off <= JACOBI_TOL * max(1.0, scale):
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = a[p][q]
            if apq == 0.0:
                continue
            theta = (a[q][q] - a[p][p]) / (2.0 * apq)
            t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            for k in range(3):
                akp, akq = a[k][p], a[k][q]
                a[k][p] = c * akp - s * akq
                a[k][q] = s * akp + c * akq
            for k in range(3):
                apk, aqk = a[p][k], a[q][k]
                a[p][k] = c * apk - s * aqk
                a[q][k] = s * apk + c * aqk
            a[p][q] = a[q][p] = 0.0
            for k in range(3):
                vkp, vkq = v[k][p], v[k][q]
                v[k][p] = c * vkp - s * vkq
                v[k][q] = s * vkp + c * vkq
    else:
        raise InvalidInputError("Jacobi iteration did not converge")

    diag = [a[0][0], a[1][1], a[2][2]]
    tie = DEGENERACY_TOL * max(1.0, scale)
    order = [0, 1, 2]
    # insertion sort, descending; only a strict gap above `tie` reorders
    for i in range(1, 3):
        j = i
        while j > 0 and diag[order[j]] > diag[order[j - 1]] + tie:
            order[j - 1], order[j] = order[j], order[j - 1]
            j -= 1

    values = np.array([diag[i] for i in order])
    vectors = np.empty((3, 3))
    for col, i in enumerate(order):
        vec = [v[0][i], v[1][i], v[2][i]]
        for comp in vec:
            if abs(comp) > 1e-12:
                if comp < 0:
                    vec = [-x for x in vec]
                break
        vectors[:, col] = vec
    return EigenPair3(values, vectors)


def min_eig_herm(m) -> float:
    """Smallest eigenvalue of a Hermitian matrix (n <= 8)."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] > 8:
        raise InvalidInputError(f"expected a square matrix of size <= 8, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix has non-finite entries")
    if np.max(np.abs(a - a.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise InvalidInputError("matrix is not Hermitian within tolerance")
    return float(np.linalg.eigvalsh(0.5 * (a + a.conj().T))[0])
