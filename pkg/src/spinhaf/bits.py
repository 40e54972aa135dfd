"""Subset <-> bitmask conventions.

Index ``i`` of the 1-based set {1, ..., n} lives in bit ``i - 1``.
"""

from itertools import combinations

from .exceptions import DomainError


def popcount(mask):
    return bin(mask).count("1")


def mask_from_indices(indices, n=None):
    """Bitmask for a collection of 1-based indices.

    Duplicates and indices below 1 are rejected; when ``n`` is given, so are
    indices above ``n``.
    """
    mask = 0
    for i in indices:
        i = int(i)
        if i < 1 or (n is not None and i > n):
            raise DomainError(f"index {i} outside 1..{n if n is not None else 'inf'}")
        if mask >> (i - 1) & 1:
            raise DomainError(f"duplicate index {i}")
        mask |= 1 << (i - 1)
    return mask


def indices_from_mask(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def parse_index_list(text, n=None):
    """Parse ``"1,3,4"`` (1-based, comma separated) into a bitmask; ``""`` is empty."""
    text = text.strip()
    if not text:
        return 0
    try:
        items = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise DomainError(f"cannot parse index list {text!r}") from None
    return mask_from_indices(items, n)


def masks_of_weight(n, weight):
    """All n-bit masks with exactly ``weight`` bits set, in lexicographic index order."""
    for combo in combinations(range(n), weight):
        m = 0
        for b in combo:
            m |= 1 << b
        yield m


def full_mask(n):
    return (1 << n) - 1
