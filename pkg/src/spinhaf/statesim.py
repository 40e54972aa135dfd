"""Dense statevector kernels for commuting-XX Hamiltonians.

State vectors are plain ``complex128`` numpy arrays of length ``2**num_spins``.
Basis index convention: spin ``i`` is bit ``i - 1``; on 4N spins, ``|S, T>``
puts ``S`` in bits ``0..2N-1`` and ``T`` in bits ``2N..4N-1``.

``apply_h`` and ``power_vector`` return unnormalized accumulators; ``evolve``
is unitary.
"""

import math

import numpy as np

from . import _kernels
from .bits import full_mask, popcount
from .exceptions import DimensionError, DomainError, ParityError, SizeLimitError
from .matfun import as_symmetric
from .spinham import build_full

MAX_SPINS = 26


def check_num_spins(num_spins):
    if not isinstance(num_spins, (int, np.integer)) or num_spins < 1:
        raise DomainError(f"num_spins must be a positive integer, got {num_spins!r}")
    if num_spins > MAX_SPINS:
        raise SizeLimitError(f"statevectors limited to {MAX_SPINS} spins, got {num_spins}")
    return int(num_spins)


def num_spins_of(psi):
    """Number of spins for a vector of length 2**n."""
    dim = psi.shape[0]
    n = dim.bit_length() - 1
    if psi.ndim != 1 or dim < 2 or (1 << n) != dim:
        raise DimensionError(f"state length must be a power of two >= 2, got shape {psi.shape}")
    return n


def as_state(psi, num_spins=None):
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    n = num_spins_of(psi)
    if num_spins is not None and n != num_spins:
        raise DimensionError(f"expected a {num_spins}-spin state, got {n} spins")
    return psi


def basis_state(num_spins, mask):
    """Computational basis state ``|S>`` for the subset encoded by ``mask``."""
    num_spins = check_num_spins(num_spins)
    if not 0 <= mask < (1 << num_spins):
        raise DomainError(f"mask {mask} out of range for {num_spins} spins")
    psi = np.zeros(1 << num_spins, dtype=np.complex128)
    psi[mask] = 1.0
    return psi


def split_mask(s_mask, t_mask, half):
    """Index of ``|S, T>`` when each register has ``half`` spins."""
    return s_mask | (t_mask << half)


def apply_h(h, psi):
    """``H |psi>`` as an unnormalized vector."""
    psi = as_state(psi, h.num_spins)
    if not h.terms:
        return np.zeros_like(psi)
    return _kernels.apply_xx(psi, h.flips, h.coeffs)


def power_vector(h, k, psi):
    """``H^k |psi>`` by ``k`` successive applications."""
    if k < 0:
        raise DomainError(f"power must be non-negative, got {k}")
    out = as_state(psi, h.num_spins).copy()
    for _ in range(k):
        out = apply_h(h, out)
    return out


def overlap(bra, ket):
    """``<bra|ket>``."""
    bra = np.asarray(bra)
    ket = np.asarray(ket)
    if bra.shape != ket.shape:
        raise DimensionError(f"overlap of mismatched shapes {bra.shape} and {ket.shape}")
    return complex(np.vdot(bra, ket))


def _real_amplitude(value):
    if abs(value.imag) >= 1e-12 * max(1.0, abs(value.real)):
        raise ArithmeticError(f"expected a real amplitude, imaginary part {value.imag:g}")
    return float(value.real)


def transition_amplitude(h, k, bra, ket):
    """``<bra| H^k |ket>`` between basis states given as bitmasks.

    Real for real coefficients; the imaginary part is checked to vanish.
    """
    dim = 1 << h.num_spins
    for name, m in (("bra", bra), ("ket", ket)):
        if not 0 <= m < dim:
            raise DimensionError(f"{name} mask {m} out of range for {h.num_spins} spins")
    vec = power_vector(h, k, basis_state(h.num_spins, ket))
    return _real_amplitude(complex(vec[bra]))


def transition_amplitude_4n(a, s_mask):
    """``<S, S^c| H^N |0, 0>`` on the full 4N-spin model of ``a``."""
    a = as_symmetric(a)
    two_n = a.shape[0]
    if not 0 <= s_mask < (1 << two_n):
        raise DomainError(f"subset mask {s_mask} out of range for 2N = {two_n}")
    if popcount(s_mask) % 2:
        raise ParityError(f"|S| must be even, got {popcount(s_mask)}")
    h = build_full(a)
    target = split_mask(s_mask, full_mask(two_n) ^ s_mask, two_n)
    return transition_amplitude(h, two_n // 2, target, 0)


def evolve(h, t, psi):
    """``exp(-i H t) |psi>``, exact: one two-level rotation per commuting term."""
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"evolution time must be finite, got {t}")
    out = as_state(psi, h.num_spins).copy()
    if h.terms:
        angles = h.coeffs * t
        _kernels.rotate_xx(out, h.flips, np.cos(angles), np.sin(angles))
    return out


def parity_sectors(psi, tol=0.0):
    """Set of Hamming-weight parities (0 or 1) carrying amplitude above ``tol``."""
    psi = np.asarray(psi)
    idx = np.nonzero(np.abs(psi) > tol)[0]
    return {popcount(int(m)) % 2 for m in idx}


def weight_of_indices(num_spins):
    """Hamming weight of every basis index as an int array."""
    idx = np.arange(1 << num_spins, dtype=np.int64)
    w = np.zeros_like(idx)
    for i in range(num_spins):
        w += (idx >> i) & 1
    return w
