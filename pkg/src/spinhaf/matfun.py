"""Permanent, hafnian and loop-hafnian.

Each function has a fast path and a brute-force oracle:

=================  ==========================================  =====================
function           fast path                                   oracle
=================  ==========================================  =====================
permanent          Ryser inclusion-exclusion in Gray-code      ``permanent_enum``
                   order, O(2^n n)
hafnian            subset recursion over even-popcount masks   ``hafnian_enum``
                   (memo table of size 2^n)
loop_hafnian       diagonal-weighted sum over the same table   ``loop_hafnian_enum``
=================  ==========================================  =====================

Empty matrices have permanent, hafnian and loop-hafnian equal to 1.
"""

import itertools
import json
import math

import numpy as np

from . import _kernels
from .exceptions import DimensionError, ParityError, SizeLimitError, SymmetryError

#: Largest dimension for which the 2^n memo table is allocated.
MAX_TABLE_DIM = 26
#: Largest permanent handled by the Gray-code path.
MAX_PERMANENT_DIM = 30
MAX_PERMANENT_ENUM_DIM = 10
MAX_HAFNIAN_ENUM_DIM = 12
MAX_LOOP_HAFNIAN_ENUM_DIM = 12


def as_square(b):
    """Return ``b`` as a float64 square array or raise :class:`DimensionError`."""
    arr = np.asarray(b, dtype=np.float64)
    if arr.size == 0:
        return np.zeros((0, 0))
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def as_symmetric(m):
    """Return ``m`` as a float64 square array, requiring exact symmetry."""
    arr = as_square(m)
    if not np.array_equal(arr, arr.T):
        dev = np.abs(arr - arr.T)
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        raise SymmetryError(
            f"matrix is not symmetric: |A[{i + 1},{j + 1}] - A[{j + 1},{i + 1}]| = {dev[i, j]:g}"
        )
    return arr


def _check_even(n):
    if n % 2:
        raise ParityError(f"hafnian needs an even dimension, got {n}")


# --- permanent -------------------------------------------------------------


def permanent(b):
    """Permanent of a square real matrix via Ryser's formula in Gray-code order."""
    b = as_square(b)
    n = b.shape[0]
    if n > MAX_PERMANENT_DIM:
        raise SizeLimitError(f"permanent limited to n <= {MAX_PERMANENT_DIM}, got {n}")
    if n == 0:
        return 1.0
    return float(_kernels.permanent_ryser(np.ascontiguousarray(b)))


def permanent_enum(b):
    """Permanent as the literal sum over all n! permutations."""
    b = as_square(b)
    n = b.shape[0]
    if n > MAX_PERMANENT_ENUM_DIM:
        raise SizeLimitError(
            f"permanent_enum limited to n <= {MAX_PERMANENT_ENUM_DIM}, got {n}"
        )
    total = 0.0
    rows = range(n)
    for sigma in itertools.permutations(range(n)):
        total += math.prod(b[i, sigma[i]] for i in rows)
    return float(total)


# --- hafnian ---------------------------------------------------------------


def _pairings(items):
    if not items:
        yield ()
        return
    first = items[0]
    for pos in range(1, len(items)):
        rest = items[1:pos] + items[pos + 1 :]
        for tail in _pairings(rest):
            yield ((first, items[pos]),) + tail


def hafnian_enum(m):
    """Hafnian as the literal sum over all (2n-1)!! pair partitions.

    Diagonal entries do not enter.
    """
    m = as_symmetric(m)
    n = m.shape[0]
    _check_even(n)
    if n > MAX_HAFNIAN_ENUM_DIM:
        raise SizeLimitError(f"hafnian_enum limited to n <= {MAX_HAFNIAN_ENUM_DIM}, got {n}")
    total = 0.0
    for rho in _pairings(tuple(range(n))):
        total += math.prod(m[i, j] for i, j in rho)
    return float(total)


def hafnian_table(m):
    """Hafnians of every principal submatrix, indexed by subset bitmask.

    ``table[mask]`` is ``haf(m[S, S])`` for the index set ``S`` encoded by
    ``mask`` (bit ``i`` for row ``i``, 0-based). Odd-popcount entries are 0.
    Built bottom-up from

        haf(A_V) = 1/(k+1) * sum_{i<j in V} A_ij haf(A_{V - {i,j}}),  |V| = 2k+2.

    The returned array may be reused read-only across threads.
    """
    m = as_symmetric(m)
    n = m.shape[0]
    if n > MAX_TABLE_DIM:
        raise SizeLimitError(f"hafnian table limited to n <= {MAX_TABLE_DIM}, got {n}")
    if n == 0:
        return np.ones(1)
    return _kernels.hafnian_table(np.ascontiguousarray(m))


def hafnian(m):
    """Hafnian of an even-dimensional real symmetric matrix."""
    m = as_symmetric(m)
    n = m.shape[0]
    _check_even(n)
    if n == 0:
        return 1.0
    return float(hafnian_table(m)[-1])


# --- loop hafnian ----------------------------------------------------------


def loop_hafnian_from_table(m, table):
    """Loop-hafnian of ``m`` given its precomputed :func:`hafnian_table`."""
    m = as_symmetric(m)
    n = m.shape[0]
    if n == 0:
        return 1.0
    weights = _kernels.complement_diag_products(np.ascontiguousarray(np.diag(m)))
    # odd-size subsets have table entry 0 and contribute nothing
    return float(np.dot(weights, table))


def loop_hafnian(m):
    """Loop-hafnian: sum over subsets S of prod_{i not in S} m_ii * haf(m_S)."""
    m = as_symmetric(m)
    n = m.shape[0]
    if n == 0:
        return 1.0
    if not np.any(np.diag(m)):
        return 0.0 if n % 2 else hafnian(m)
    return loop_hafnian_from_table(m, hafnian_table(m))


def loop_hafnian_enum(m):
    """Loop-hafnian as the literal double sum over subset sizes and subsets."""
    m = as_symmetric(m)
    n = m.shape[0]
    if n > MAX_LOOP_HAFNIAN_ENUM_DIM:
        raise SizeLimitError(
            f"loop_hafnian_enum limited to n <= {MAX_LOOP_HAFNIAN_ENUM_DIM}, got {n}"
        )
    total = 0.0
    everything = set(range(n))
    for k in range(n + 1):
        for s in itertools.combinations(range(n), k):
            if k % 2:
                continue  # hafnian of an odd-size matrix is 0
            loops = math.prod(m[i, i] for i in everything.difference(s))
            total += loops * hafnian_enum(m[np.ix_(s, s)])
    return float(total)


# --- bipartite embedding ---------------------------------------------------


def embed_bipartite(b):
    """The 2N x 2N symmetric matrix [[0, B], [B^T, 0]]; its hafnian is perm(B)."""
    b = as_square(b)
    n = b.shape[0]
    a = np.zeros((2 * n, 2 * n))
    a[:n, n:] = b
    a[n:, :n] = b.T
    return a


def submatrix(m, mask):
    """Principal submatrix picked by a bitmask (bit i selects row/column i)."""
    m = np.asarray(m)
    rows = [i for i in range(m.shape[0]) if mask >> i & 1]
    return m[np.ix_(rows, rows)]


# --- matrix JSON -----------------------------------------------------------


def matrix_to_json(m):
    m = as_square(m)
    return {"n": int(m.shape[0]), "entries": [float(x) for x in m.ravel()]}


def matrix_from_json(obj, symmetric=True):
    """Parse ``{"n": n, "entries": [row-major reals]}``.

    With ``symmetric=True`` the matrix must be exactly symmetric; the largest
    deviation is named in the error.
    """
    try:
        n = obj["n"]
        entries = obj["entries"]
    except (KeyError, TypeError):
        raise DimensionError('matrix JSON needs keys "n" and "entries"') from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DimensionError(f'"n" must be a non-negative integer, got {n!r}')
    if not isinstance(entries, list) or len(entries) != n * n:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise DimensionError(f'"entries" must hold n*n = {n * n} numbers, got {got}')
    try:
        arr = np.array(entries, dtype=np.float64).reshape(n, n)
    except (TypeError, ValueError):
        raise DimensionError('"entries" must be real numbers') from None
    if not np.all(np.isfinite(arr)):
        raise DimensionError("matrix entries must be finite")
    return as_symmetric(arr) if symmetric else arr


def load_matrix(path, symmetric=True):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DimensionError(f"{path}: invalid JSON ({exc.msg})") from None
    return matrix_from_json(obj, symmetric=symmetric)


def save_matrix(path, m):
    with open(path, "w") as fh:
        json.dump(matrix_to_json(m), fh)
