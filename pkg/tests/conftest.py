import numpy as np
import pytest
from scipy.stats import unitary_group

from qcorr3.qstate import ket


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unitary(rng, dim=2):
    return unitary_group.rvs(dim, random_state=rng)


def local_unitary(rng):
    u = [random_unitary(rng) for _ in range(3)]
    return np.kron(np.kron(u[0], u[1]), u[2])


def pure(vec):
    vec = np.asarray(vec, dtype=complex)
    vec = vec / np.linalg.norm(vec)
    return np.outer(vec, vec.conj())


def ghz_rho():
    return pure(ket("000") + ket("111"))


def bell_rho():
    # (|00> + |11>)/sqrt2; the basis order does not matter for this state
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1
    return pure(v)


def embed_front(op8, k):
    """Re-order an operator written with qubit k as the leftmost factor into the standard order."""
    t = np.asarray(op8).reshape((2,) * 6)
    order = [k - 1] + [q for q in range(3) if q != k - 1]
    inv = list(np.argsort(order))
    return t.transpose(inv + [3 + i for i in inv]).reshape(8, 8)


def classical_quantum(rng, k):
    """sum_l p_l |l><l| (x) rho_l with |l> a random basis of qubit k."""
    from qcorr3.qstate import random_density

    u = random_unitary(rng)
    p = rng.dirichlet([1.0, 1.0])
    out = np.zeros((8, 8), dtype=complex)
    for l in range(2):
        proj = np.outer(u[:, l], u[:, l].conj())
        out += p[l] * np.kron(proj, random_density(rng, dim=4))
    return embed_front(out, k)
