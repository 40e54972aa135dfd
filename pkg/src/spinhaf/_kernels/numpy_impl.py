"""Vectorized numpy kernels; same contracts as :mod:`numba_impl`."""

import numpy as np


def _popcounts(n):
    idx = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        pc += (idx >> i) & 1
    return idx, pc


def apply_xx(psi, flips, coeffs):
    idx = np.arange(psi.shape[0], dtype=np.int64)
    out = np.zeros(psi.shape[0], dtype=np.complex128)
    for f, c in zip(flips, coeffs):
        out += c * psi[idx ^ f]
    return out


def rotate_xx(psi, flips, cosines, sines):
    idx = np.arange(psi.shape[0], dtype=np.int64)
    for f, c, s in zip(flips, cosines, sines):
        # pairs (m, m ^ f) are disjoint, so a full-vector update is exact
        psi[:] = c * psi - 1j * s * psi[idx ^ f]


def apply_1q(psi, target, m00, m01, m10, m11, control):
    idx = np.arange(psi.shape[0], dtype=np.int64)
    bit = 1 << target
    sel = (idx & bit) == 0
    if control >= 0:
        sel &= (idx & (1 << control)) != 0
    lo = idx[sel]
    hi = lo | bit
    a = psi[lo]
    b = psi[hi]
    psi[lo] = m00 * a + m01 * b
    psi[hi] = m10 * a + m11 * b


def hafnian_table(a):
    n = a.shape[0]
    idx, pc = _popcounts(n)
    table = np.zeros(1 << n, dtype=np.float64)
    table[0] = 1.0
    for level in range(2, n + 1, 2):
        masks = idx[pc == level]
        acc = np.zeros(masks.shape[0], dtype=np.float64)
        for i in range(n):
            has_i = (masks >> i) & 1
            for j in range(i + 1, n):
                if a[i, j] == 0.0:
                    continue
                sel = (has_i & (masks >> j)).astype(bool)
                sub = masks[sel] ^ ((1 << i) | (1 << j))
                acc[sel] += a[i, j] * table[sub]
        table[masks] = acc / (level // 2)
    return table


def complement_diag_products(d):
    n = d.shape[0]
    idx = np.arange(1 << n, dtype=np.int64)
    prod = np.ones(1 << n, dtype=np.float64)
    for i in range(n):
        prod[((idx >> i) & 1) == 1] *= d[i]
    # full ^ S == full - S, so the complement lookup is a reversal
    return prod[::-1].copy()


def permanent_ryser(b):
    n = b.shape[0]
    if n == 0:
        return 1.0
    k = np.arange(1, 1 << n, dtype=np.int64)
    gray = k ^ (k >> 1)
    col = np.zeros(k.shape[0], dtype=np.int64)
    low = k & -k
    for j in range(n):
        col[low == (1 << j)] = j
    added = ((gray >> col) & 1).astype(np.float64) * 2.0 - 1.0
    rowsums = np.cumsum(added[:, None] * b.T[col], axis=0)
    sizes = np.zeros(k.shape[0], dtype=np.int64)
    for j in range(n):
        sizes += (gray >> j) & 1
    signs = np.where(sizes & 1, -1.0, 1.0)
    total = float(np.sum(signs * np.prod(rowsums, axis=1)))
    return -total if n & 1 else total
