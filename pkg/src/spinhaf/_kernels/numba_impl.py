"""Loop kernels compiled with numba."""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def apply_xx(psi, flips, coeffs):
    # out[m] = sum_t c_t * psi[m ^ f_t]
    dim = psi.shape[0]
    out = np.zeros(dim, dtype=np.complex128)
    for t in range(flips.shape[0]):
        f = flips[t]
        c = coeffs[t]
        for m in range(dim):
            out[m] += c * psi[m ^ f]
    return out


@nb.njit(cache=True)
def rotate_xx(psi, flips, cosines, sines):
    # exp(-i a X_i X_j) per term with cos(a), sin(a) given; terms commute
    dim = psi.shape[0]
    for t in range(flips.shape[0]):
        f = flips[t]
        c = cosines[t]
        s = sines[t]
        for m in range(dim):
            p = m ^ f
            if m < p:
                u = psi[m]
                v = psi[p]
                psi[m] = c * u - 1j * s * v
                psi[p] = c * v - 1j * s * u


@nb.njit(cache=True)
def apply_1q(psi, target, m00, m01, m10, m11, control):
    # control < 0 means uncontrolled
    bit = np.int64(1) << target
    cbit = np.int64(0)
    if control >= 0:
        cbit = np.int64(1) << control
    for m in range(psi.shape[0]):
        if m & bit:
            continue
        if cbit and not (m & cbit):
            continue
        a = psi[m]
        b = psi[m | bit]
        psi[m] = m00 * a + m01 * b
        psi[m | bit] = m10 * a + m11 * b


@nb.njit(cache=True)
def hafnian_table(a):
    n = a.shape[0]
    size = 1 << n
    table = np.zeros(size, dtype=np.float64)
    table[0] = 1.0
    idx = np.empty(n, dtype=np.int64)
    for mask in range(1, size):
        pc = 0
        for i in range(n):
            if (mask >> i) & 1:
                idx[pc] = i
                pc += 1
        if pc & 1:
            continue
        acc = 0.0
        for p in range(pc):
            i = idx[p]
            for q in range(p + 1, pc):
                j = idx[q]
                acc += a[i, j] * table[mask ^ (1 << i) ^ (1 << j)]
        # each matching is reached once per edge it contains
        table[mask] = acc / (pc // 2)
    return table


@nb.njit(cache=True)
def complement_diag_products(d):
    n = d.shape[0]
    size = 1 << n
    prod = np.empty(size, dtype=np.float64)
    prod[0] = 1.0
    for mask in range(1, size):
        low = mask & -mask
        i = 0
        while (low >> i) != 1:
            i += 1
        prod[mask] = prod[mask ^ low] * d[i]
    full = size - 1
    out = np.empty(size, dtype=np.float64)
    for mask in range(size):
        out[mask] = prod[full ^ mask]
    return out


@nb.njit(cache=True)
def permanent_ryser(b):
    n = b.shape[0]
    if n == 0:
        return 1.0
    rowsum = np.zeros(n, dtype=np.float64)
    total = 0.0
    sign = 1.0  # (-1)^{|S|} for the current Gray-code subset
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        j = 0
        while not ((k >> j) & 1):
            j += 1
        if gray & (1 << j):
            for i in range(n):
                rowsum[i] += b[i, j]
        else:
            for i in range(n):
                rowsum[i] -= b[i, j]
        sign = -sign
        prod = 1.0
        for i in range(n):
            prod *= rowsum[i]
        total += sign * prod
    if n & 1:
        return -total
    return total
