"""Per-matrix checks of the amplitude identities, shared by tests and the CLI.

Each check returns ``(name, residual, passed)``. Residuals are relative,
``|lhs - rhs| / max(|rhs|, 1)`` maximized over all cases, so zero targets are
measured absolutely.
"""

import math

import numpy as np

from .bits import full_mask, masks_of_weight
from .matfun import (
    as_symmetric,
    embed_bipartite,
    hafnian_table,
    loop_hafnian,
    permanent,
)
from .spinham import build_full, build_h1
from .statesim import basis_state, power_vector, split_mask
from .targetstates import (
    count_nonzero_diagonal,
    double_factorial,
    norm_L,
    norm_L_truncated,
    phi1_state,
    phi1_state_truncated,
    truncation_level,
)

DEFAULT_TOL = 1e-9


def _resid(lhs, rhs):
    return abs(lhs - rhs) / max(abs(rhs), 1.0)


def check_hafnian_amplitudes(a, table=None):
    """``<S|H1^k|0> = k! haf(A_S)`` for ``|S| = 2k``; 0 for ``|S| > 2k`` or odd ``|S|``.

    Lighter even weights are reachable (a term may flip one spin up and one
    down), so no claim is made about them.
    """
    a = as_symmetric(a)
    two_n = a.shape[0]
    N = two_n // 2
    if table is None:
        table = hafnian_table(a)
    h = build_h1(a)
    vec = basis_state(two_n, 0)
    worst = 0.0
    idx = np.arange(1 << two_n)
    weights = np.array([bin(m).count("1") for m in idx])
    for k in range(1, N + 1):
        vec = power_vector(h, 1, vec)
        on = weights == 2 * k
        expected = math.factorial(k) * table[on]
        worst = max(worst, float(np.max(np.abs(vec[on].real - expected) / np.maximum(np.abs(expected), 1.0))))
        forbidden = (weights > 2 * k) | (weights % 2 == 1)
        worst = max(worst, float(np.max(np.abs(vec[forbidden]), initial=0.0)))
    return worst


def check_factorized_amplitudes(a, table=None):
    """``<S,S^c|H^N|0,0> = N! (2(N-k)-1)!! prod_{S^c} A_ii haf(A_S)`` for even ``S``."""
    a = as_symmetric(a)
    two_n = a.shape[0]
    N = two_n // 2
    if table is None:
        table = hafnian_table(a)
    h = build_full(a)
    vec = power_vector(h, N, basis_state(2 * two_n, 0))
    d = np.diag(a)
    full = full_mask(two_n)
    worst = 0.0
    for k in range(N + 1):
        pref = math.factorial(N) * double_factorial(2 * (N - k) - 1)
        for s in masks_of_weight(two_n, 2 * k):
            loops = math.prod(d[i] for i in range(two_n) if not s >> i & 1)
            target = pref * loops * table[s]
            worst = max(worst, _resid(vec[split_mask(s, full ^ s, two_n)].real, target))
    return worst


def loop_amplitude(a, truncated=False):
    """``<phi1|H^N|0,0>`` using the full or ``p``-truncated target state."""
    a = as_symmetric(a)
    N = a.shape[0] // 2
    h = build_full(a)
    vec = power_vector(h, N, basis_state(h.num_spins, 0))
    if truncated:
        phi = phi1_state_truncated(N, count_nonzero_diagonal(a))
    else:
        phi = phi1_state(N)
    return complex(np.vdot(phi, vec)).real


def check_loop_hafnian(a, lhaf=None):
    a = as_symmetric(a)
    N = a.shape[0] // 2
    if lhaf is None:
        lhaf = loop_hafnian(a)
    return _resid(loop_amplitude(a) * norm_L(N).value / math.factorial(N), lhaf)


def check_truncated_loop_hafnian(a, lhaf=None):
    a = as_symmetric(a)
    N = a.shape[0] // 2
    if lhaf is None:
        lhaf = loop_hafnian(a)
    l = truncation_level(count_nonzero_diagonal(a))
    norm = norm_L_truncated(N, l).value
    return _resid(loop_amplitude(a, truncated=True) * norm / math.factorial(N), lhaf)


def bipartite_block(a):
    """``B`` when ``a == [[0, B], [B^T, 0]]`` exactly, else ``None``."""
    a = np.asarray(a)
    n = a.shape[0] // 2
    if a.shape[0] % 2 or n == 0:
        return None
    b = a[:n, n:]
    if np.array_equal(a, embed_bipartite(b)):
        return b
    return None


def run_all(a, tol=DEFAULT_TOL):
    """All identity checks applicable to ``a``."""
    a = as_symmetric(a)
    table = hafnian_table(a)
    lhaf = loop_hafnian(a)
    checks = [
        ("hafnian_amplitudes", check_hafnian_amplitudes(a, table)),
        ("factorized_4n_amplitudes", check_factorized_amplitudes(a, table)),
        ("loop_hafnian_encoding", check_loop_hafnian(a, lhaf)),
        ("truncated_loop_hafnian_encoding", check_truncated_loop_hafnian(a, lhaf)),
    ]
    b = bipartite_block(a)
    if b is not None:
        N = b.shape[0]
        h = build_h1(a)
        amp = power_vector(h, N, basis_state(2 * N, 0))[-1].real
        checks.append(("permanent_reduction", _resid(amp, math.factorial(N) * permanent(b))))
    return [(name, float(r), bool(r < tol)) for name, r in checks]
