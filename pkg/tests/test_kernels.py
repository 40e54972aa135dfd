import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from spinhaf import _kernels

from conftest import random_state, random_symmetric

needs_numba = pytest.mark.skipif(not _kernels.NUMBA_AVAILABLE, reason="numba not installed")


def _terms(rng, n, count):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pick = rng.choice(len(pairs), size=count, replace=False)
    flips = np.array([(1 << pairs[p][0]) | (1 << pairs[p][1]) for p in pick], dtype=np.int64)
    return flips, rng.normal(size=count)


def test_apply_xx_single_term(backend):
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1
    out = backend.apply_xx(psi, np.array([3], dtype=np.int64), np.array([2.5]))
    np.testing.assert_allclose(out, [0, 0, 0, 2.5])


def test_rotate_xx_is_two_level_rotation(backend):
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1
    a = 0.3
    backend.rotate_xx(psi, np.array([3], dtype=np.int64), np.array([np.cos(a)]), np.array([np.sin(a)]))
    np.testing.assert_allclose(psi, [np.cos(a), 0, 0, -1j * np.sin(a)], atol=1e-15)


def test_apply_1q_controlled(backend):
    psi = np.zeros(4, dtype=complex)
    psi[1] = 1  # qubit 0 set
    backend.apply_1q(psi, 1, 0j, 1 + 0j, 1 + 0j, 0j, 0)  # CNOT 0 -> 1
    np.testing.assert_allclose(psi, [0, 0, 0, 1])
    backend.apply_1q(psi, 0, 0j, 1 + 0j, 1 + 0j, 0j, -1)  # X on 0
    np.testing.assert_allclose(psi, [0, 0, 1, 0])


def test_hafnian_table_small(backend):
    a = np.array([[0.0, 2.0, 3.0, 5.0], [2.0, 0.0, 7.0, 11.0], [3.0, 7.0, 0.0, 13.0], [5.0, 11.0, 13.0, 0.0]])
    table = backend.hafnian_table(a)
    assert table[0] == 1.0
    assert table[0b0011] == 2.0
    assert table[0b1100] == 13.0
    # three matchings: 2*13 + 3*11 + 5*7
    assert table[0b1111] == pytest.approx(26 + 33 + 35, rel=1e-15)
    assert table[0b0111] == 0.0


def test_complement_diag_products(backend):
    d = np.array([2.0, 3.0, 5.0])
    out = backend.complement_diag_products(d)
    assert out[0] == 30.0
    assert out[0b001] == 15.0
    assert out[0b110] == 2.0
    assert out[0b111] == 1.0


def test_permanent_ryser_2x2(backend):
    assert backend.permanent_ryser(np.array([[1.0, 2.0], [3.0, 4.0]])) == pytest.approx(10.0)
    assert backend.permanent_ryser(np.zeros((0, 0))) == 1.0


@needs_numba
@pytest.mark.parametrize("n", [3, 6, 9])
def test_backends_agree(rng, n):
    nb_, np_ = _kernels.get_backend("numba"), _kernels.get_backend("numpy")
    flips, coeffs = _terms(rng, n, min(5, n * (n - 1) // 2))
    psi = random_state(rng, n)
    np.testing.assert_allclose(nb_.apply_xx(psi, flips, coeffs), np_.apply_xx(psi, flips, coeffs), atol=1e-13)

    c, s = np.cos(coeffs), np.sin(coeffs)
    x, y = psi.copy(), psi.copy()
    nb_.rotate_xx(x, flips, c, s)
    np_.rotate_xx(y, flips, c, s)
    np.testing.assert_allclose(x, y, atol=1e-13)

    m = (0.6 + 0j, -0.8 + 0j, 0.8 + 0j, 0.6 + 0j)
    x, y = psi.copy(), psi.copy()
    nb_.apply_1q(x, n - 1, *m, 0)
    np_.apply_1q(y, n - 1, *m, 0)
    np.testing.assert_allclose(x, y, atol=1e-13)

    a = random_symmetric(rng, n)
    np.testing.assert_allclose(nb_.hafnian_table(a), np_.hafnian_table(a), rtol=1e-11, atol=1e-13)
    np.testing.assert_allclose(
        nb_.complement_diag_products(np.diag(a).copy()), np_.complement_diag_products(np.diag(a).copy()), rtol=1e-13
    )
    b = rng.uniform(-1, 1, (n, n))
    assert nb_.permanent_ryser(b) == pytest.approx(np_.permanent_ryser(b), rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("flag,expected", [("1", "numpy"), ("0", None)])
def test_env_flag_selects_backend(flag, expected):
    if expected is None:
        expected = "numba" if _kernels.NUMBA_AVAILABLE else "numpy"
    env = dict(os.environ, **{_kernels.ENV_FLAG: flag})
    code = "import spinhaf._kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected


def test_numpy_backend_end_to_end():
    # the package computes the same hafnian identity with the fallback kernels
    env = dict(os.environ, **{_kernels.ENV_FLAG: "1"})
    code = (
        "import numpy as np, math\n"
        "from spinhaf import _kernels, build_h1, basis_state, hafnian_enum\n"
        "from spinhaf.statesim import power_vector\n"
        "assert _kernels.BACKEND == 'numpy'\n"
        "rng = np.random.default_rng(3); m = rng.uniform(-1, 1, (6, 6)); a = (m + m.T) / 2\n"
        "np.fill_diagonal(a, 0)\n"
        "v = power_vector(build_h1(a), 3, basis_state(6, 0))\n"
        "assert abs(v[-1].real - 6 * hafnian_enum(a)) < 1e-12\n"
        "print('ok')\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"


def test_benchmark_script_runs():
    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    args = ["--repeat", "1", "--spins", "6", "--table-dim", "6", "--perm-dim", "5"]
    res = subprocess.run([sys.executable, str(script), *args], capture_output=True, text=True, check=True)
    assert "permanent_ryser (5x5)" in res.stdout
