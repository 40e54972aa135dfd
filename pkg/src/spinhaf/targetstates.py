"""Analytic target states and their normalization constants.

The loop-hafnian target state on 4N spins is

    |phi1> = 1/L_N * sum_{k=0}^{N} 1/(2(N-k)-1)!! * sum_{|S|=2k} |S, S^c>

with ``L_N^2 = sum_k C(2N,2k) / [(2k-1)!!]^2``. Truncating to the top
``ceil(p/2) + 1`` tiers handles matrices with ``p`` nonzero diagonal entries.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import full_mask, masks_of_weight
from .exceptions import DomainError, SizeLimitError
from .matfun import as_symmetric
from .statesim import MAX_SPINS, check_num_spins, split_mask


def double_factorial(m):
    """``m!!`` with ``(-1)!! = 0!! = 1``."""
    if m < -1:
        raise DomainError(f"double factorial needs m >= -1, got {m}")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


@dataclass(frozen=True)
class NormalizationFactor:
    """``L_{N,l}``; ``l == N`` is the untruncated ``L_N``."""

    value: float
    N: int
    l: int

    def __float__(self):
        return self.value


def norm_sum_exact(N, l=None):
    """``L_{N,l}^2`` as an exact :class:`~fractions.Fraction`."""
    if l is None:
        l = N
    return sum(
        Fraction(math.comb(2 * N, 2 * k), double_factorial(2 * k - 1) ** 2)
        for k in range(l + 1)
    )


def norm_sum_reindexed_exact(N):
    """``sum_k C(2N,2k) / [(2(N-k)-1)!!]^2``: the squared norm as first written."""
    return sum(
        Fraction(math.comb(2 * N, 2 * k), double_factorial(2 * (N - k) - 1) ** 2)
        for k in range(N + 1)
    )


def norm_L_truncated(N, l):
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}")
    if not 0 <= l <= N:
        raise DomainError(f"truncation level must satisfy 0 <= l <= N = {N}, got {l}")
    total = math.fsum(
        math.comb(2 * N, 2 * k) / double_factorial(2 * k - 1) ** 2 for k in range(l + 1)
    )
    return NormalizationFactor(math.sqrt(total), N, l)


def norm_L(N):
    return norm_L_truncated(N, N)


def _check_phi1_size(N):
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if 4 * N > MAX_SPINS:
        raise SizeLimitError(f"|phi1> needs 4N <= {MAX_SPINS} spins, got N = {N}")


def _phi1_vector(N, k_min, scale):
    two_n = 2 * N
    psi = np.zeros(1 << (2 * two_n), dtype=np.complex128)
    full = full_mask(two_n)
    for k in range(k_min, N + 1):
        amp = scale / double_factorial(2 * (N - k) - 1)
        for s in masks_of_weight(two_n, 2 * k):
            psi[split_mask(s, full ^ s, two_n)] = amp
    return psi


def phi1_unnormalized(N):
    """``L_N |phi1>``: the same superposition without the 1/L_N prefactor."""
    _check_phi1_size(N)
    return _phi1_vector(N, 0, 1.0)


def phi1_state(N):
    """Normalized loop-hafnian target state on 4N spins."""
    _check_phi1_size(N)
    return _phi1_vector(N, 0, 1.0 / norm_L(N).value)


def truncation_level(p):
    """``ceil(p / 2)``."""
    return -(-p // 2)


def phi1_state_truncated(N, p):
    """Target state for a matrix with ``p`` nonzero diagonal entries.

    Keeps tiers ``k = N - ceil(p/2) .. N`` and normalizes by ``L_{N, ceil(p/2)}``;
    ``p = 0`` gives ``|I, 0>``.
    """
    _check_phi1_size(N)
    if not 0 <= p <= 2 * N:
        raise DomainError(f"p must satisfy 0 <= p <= 2N = {2 * N}, got {p}")
    l = truncation_level(p)
    return _phi1_vector(N, N - l, 1.0 / norm_L_truncated(N, l).value)


def dicke_state(n, w):
    """Equal superposition of all ``n``-qubit basis states of Hamming weight ``w``."""
    n = check_num_spins(n)
    if not 0 <= w <= n:
        raise DomainError(f"Dicke weight must satisfy 0 <= w <= {n}, got {w}")
    psi = np.zeros(1 << n, dtype=np.complex128)
    amp = 1.0 / math.sqrt(math.comb(n, w))
    for m in masks_of_weight(n, w):
        psi[m] = amp
    return psi


def count_nonzero_diagonal(a):
    """Number of diagonal entries that are not exactly zero."""
    a = as_symmetric(a)
    return int(np.count_nonzero(np.diag(a)))
