import math

import numpy as np
import pytest

from spinhaf import _kernels


def random_symmetric(rng, n, zero_diag=False, low=-1.0, high=1.0):
    m = rng.uniform(low, high, (n, n))
    a = (m + m.T) / 2
    if zero_diag:
        np.fill_diagonal(a, 0.0)
    return a


def random_state(rng, n):
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return psi / np.linalg.norm(psi)


def rel_err(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=sorted(_kernels.BACKENDS))
def backend(request):
    return _kernels.get_backend(request.param)


# Dense Kronecker-product oracles; qubit q is bit q-1, so qubit n is the leftmost factor.
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PROJ0 = np.diag([1.0, 0.0])
PROJ1 = np.diag([0.0, 1.0])


def dense_product(factors, n):
    """Tensor product with ``factors[q]`` on qubit ``q`` (1-based), identity elsewhere."""
    out = np.eye(1)
    for q in range(n, 0, -1):
        out = np.kron(out, factors.get(q, np.eye(2)))
    return out


def dense_hamiltonian(h):
    return sum(
        (t.coeff * dense_product({t.i: PAULI_X, t.j: PAULI_X}, h.num_spins) for t in h.terms),
        np.zeros((1 << h.num_spins,) * 2),
    )


def dense_gate(g, n):
    if g.kind == "RXX":
        xx = dense_product({g.qubits[0]: PAULI_X, g.qubits[1]: PAULI_X}, n)
        return math.cos(g.theta / 2) * np.eye(1 << n) - 1j * math.sin(g.theta / 2) * xx
    if g.kind in ("RY", "CRY"):
        c, s = math.cos(g.theta / 2), math.sin(g.theta / 2)
        u = np.array([[c, -s], [s, c]])
    else:
        u = PAULI_X
    if len(g.qubits) == 1:
        return dense_product({g.qubits[0]: u}, n)
    ctl, tgt = g.qubits
    return dense_product({ctl: PROJ0}, n) + dense_product({ctl: PROJ1, tgt: u}, n)
