"""Three-qubit density matrices and their normalized-Pauli expansion.

Basis ordering follows the product listing |111>, |110>, ..., |000>:
qubit 1 is the leftmost tensor factor and each single-qubit factor is
ordered (|1>, |0>), excited state first.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg3 import min_eig_herm

NORM = 2.0 ** 1.5  # 2^{3/2}: coefficient -> Pauli expectation value
IDENTITY_COEFF = 2.0 ** -1.5

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
IMAG_TOL = 1e-9

# Paulis in the (|1>, |0>) ordering: sigma_z|0> = +|0>
SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, 1j], [-1j, 0]],
        [[-1, 0], [0, 1]],
    ],
    dtype=complex,
)
X_BASIS = SIGMA / math.sqrt(2.0)

# (4, 4, 4, 8, 8) array of X_i (x) X_j (x) X_k
_X3 = np.einsum("iab,jcd,kef->ijkacebdf", X_BASIS, X_BASIS, X_BASIS).reshape(4, 4, 4, 8, 8)

PAIRS = ((1, 2), (1, 3), (2, 3))


class InvalidStateError(ValueError):
    pass


class CorruptedStateError(ValueError):
    pass


class NotAStateWarning(UserWarning):
    pass


def basis_index(bits: str) -> int:
    """0-based row index of a computational basis ket, e.g. ``"000" -> 7``."""
    if len(bits) != 3 or set(bits) - {"0", "1"}:
        raise ValueError(f"bad basis label {bits!r}")
    return 7 - int(bits, 2)


def ket(bits: str) -> np.ndarray:
    v = np.zeros(8, dtype=complex)
    v[basis_index(bits)] = 1.0
    return v


def projector(bits: str) -> np.ndarray:
    v = ket(bits)
    return np.outer(v, v.conj())


def validate_density(rho, dim: int = 8) -> np.ndarray:
    """Return ``rho`` as a complex array after checking it is a density matrix."""
    a = np.asarray(rho, dtype=complex)
    if a.shape != (dim, dim):
        raise InvalidStateError(f"expected shape ({dim}, {dim}), got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidStateError("density matrix has non-finite entries")
    herm = np.max(np.abs(a - a.conj().T))
    if herm > HERMITIAN_TOL:
        raise InvalidStateError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
    tr = np.trace(a)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace is {tr.real:.15g}, expected 1")
    lam = min_eig_herm(a)
    if lam < -PSD_TOL:
        raise InvalidStateError(f"not positive semidefinite: min eigenvalue {lam:.3e}")
    return a


def random_density(rng: np.random.Generator, dim: int = 8, rank: int | None = None) -> np.ndarray:
    """Ginibre-sampled density matrix G G^dag / Tr(G G^dag)."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def coeff_tensor(rho) -> np.ndarray:
    """Coefficients ``C[i, j, k] = Tr(rho X_i (x) X_j (x) X_k)`` as a real (4, 4, 4) array."""
    a = np.asarray(rho, dtype=complex)
    if a.shape != (8, 8):
        raise InvalidStateError(f"expected shape (8, 8), got {a.shape}")
    c = np.einsum("ijkab,ba->ijk", _X3, a)
    resid = np.max(np.abs(c.imag))
    if resid >= IMAG_TOL:
        raise CorruptedStateError(f"coefficient tensor has imaginary residue {resid:.3e}")
    c = c.real.copy()
    c[0, 0, 0] = IDENTITY_COEFF
    return c


def rho_from_coeff(c) -> np.ndarray:
    """Inverse of :func:`coeff_tensor`.

    A matrix with a negative eigenvalue below -1e-8 triggers a
    :class:`NotAStateWarning` but is still returned.
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (4, 4, 4):
        raise InvalidStateError(f"expected a (4, 4, 4) tensor, got {c.shape}")
    rho = np.einsum("ijk,ijkab->ab", c, _X3)
    rho = 0.5 * (rho + rho.conj().T)
    lam = float(np.linalg.eigvalsh(rho)[0])
    if lam < -1e-8:
        warnings.warn(f"coefficients do not describe a state (min eigenvalue {lam:.3e})", NotAStateWarning)
    return rho


@dataclass(frozen=True)
class BlochDecomposition:
    """Pauli expectation values of a three-qubit state.

    ``T12[a, b] = <sigma_a (x) sigma_b (x) I>`` and likewise for the other
    pairs; ``T3[a, b, c] = <sigma_a (x) sigma_b (x) sigma_c>``.
    """

    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray
    T12: np.ndarray
    T13: np.ndarray
    T23: np.ndarray
    T3: np.ndarray

    def s(self, k: int) -> np.ndarray:
        return (self.s1, self.s2, self.s3)[_check_qubit(k) - 1]

    def pair(self, k: int, other: int) -> np.ndarray:
        """Pair correlation matrix with rows indexed by qubit ``k``."""
        k, other = _check_qubit(k), _check_qubit(other)
        if k == other:
            raise ValueError("pair needs two distinct qubits")
        lo, hi = sorted((k, other))
        m = {(1, 2): self.T12, (1, 3): self.T13, (2, 3): self.T23}[(lo, hi)]
        return m if k == lo else m.T


def _check_qubit(k: int) -> int:
    if k not in (1, 2, 3):
        raise ValueError(f"qubit index must be 1, 2 or 3, got {k!r}")
    return k


def bloch_parts(c) -> BlochDecomposition:
    c = NORM * np.asarray(c, dtype=float)
    return BlochDecomposition(
        s1=c[1:, 0, 0].copy(),
        s2=c[0, 1:, 0].copy(),
        s3=c[0, 0, 1:].copy(),
        T12=c[1:, 1:, 0].copy(),
        T13=c[1:, 0, 1:].copy(),
        T23=c[0, 1:, 1:].copy(),
        T3=c[1:, 1:, 1:].copy(),
    )


def reduce_two_qubit(rho, pair: tuple[int, int]) -> np.ndarray:
    """Partial trace onto an ordered pair of qubits, e.g. ``(1, 3)`` or ``(3, 1)``."""
    a, b = pair
    if {a, b} not in ({1, 2}, {1, 3}, {2, 3}) or a == b:
        raise ValueError(f"invalid qubit pair {pair!r}")
    gone = ({1, 2, 3} - {a, b}).pop()
    t = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2, 2, 2)
    letters_in = ["a", "b", "c"]
    letters_out = ["d", "e", "f"]
    letters_out[gone - 1] = letters_in[gone - 1]
    keep = [q - 1 for q in (a, b)]
    spec = (
        "".join(letters_in)
        + "".join(letters_out)
        + "->"
        + "".join(letters_in[q] for q in keep)
        + "".join(letters_out[q] for q in keep)
    )
    return np.einsum(spec, t).reshape(4, 4)


# -- text format -------------------------------------------------------------

class DensityParseError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def format_density(rho) -> str:
    a = np.asarray(rho, dtype=complex)
    return "".join(" ".join(format_complex(z) for z in row) + "\n" for row in a)


_COMPLEX_RE = re.compile(
    r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?[+-](\d+\.?\d*|\.\d+)([eE][+-]?\d+)?i$"
)


def parse_density(text: str) -> np.ndarray:
    """Parse the 8-line ``a+bi`` text format. Blank lines and ``#`` comments are skipped."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 8:
            raise DensityParseError(f"expected 8 entries, found {len(tokens)}", lineno)
        row = []
        for col, tok in enumerate(tokens, start=1):
            if not _COMPLEX_RE.match(tok):
                raise DensityParseError(f"cannot parse entry {tok!r} as a+bi", lineno, col)
            row.append(complex(tok[:-1] + "j"))
        rows.append(row)
        if len(rows) > 8:
            raise DensityParseError("more than 8 rows", lineno)
    if len(rows) != 8:
        raise DensityParseError(f"expected 8 rows, found {len(rows)}", len(text.splitlines()))
    return np.array(rows, dtype=complex)


def read_density(path) -> np.ndarray:
    return parse_density(Path(path).read_text())


def write_density(path, rho) -> None:
    Path(path).write_text(format_density(rho))


def pauli_string(labels: str) -> np.ndarray:
    """Tensor product of Paulis, e.g. ``"xyI"`` (case-insensitive, ``i`` = identity)."""
    idx = {"i": 0, "x": 1, "y": 2, "z": 3}
    out = np.ones((1, 1), dtype=complex)
    for ch in labels.lower():
        out = np.kron(out, SIGMA[idx[ch]])
    return out


__all__ = [
    "BlochDecomposition",
    "CorruptedStateError",
    "DensityParseError",
    "InvalidStateError",
    "NotAStateWarning",
    "PAIRS",
    "basis_index",
    "bloch_parts",
    "coeff_tensor",
    "format_density",
    "ket",
    "parse_density",
    "pauli_string",
    "projector",
    "random_density",
    "read_density",
    "reduce_two_qubit",
    "rho_from_coeff",
    "validate_density",
    "write_density",
]
