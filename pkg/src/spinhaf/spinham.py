"""Commuting-XX Ising Hamiltonians built from a real symmetric matrix.

For a 2N x 2N matrix A the full model lives on 4N spins::

    H  = H1 + H2
    H1 = sum_{i<j}  A_ij        X_i X_j            spins 1..2N
    H2 = sum_{i<j}  A_ii A_jj   X_{2N+i} X_{2N+j}  spins 2N+1..4N

The half-sum over ordered pairs is folded into one term per unordered pair.
Zero coefficients are dropped.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError, DomainError, ParityError
from .matfun import as_symmetric


@dataclass(frozen=True, order=True)
class XXTerm:
    """``coeff * X_i X_j`` with 1-based spin indices ``i < j``."""

    i: int
    j: int
    coeff: float

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise DomainError(f"XX term needs 1 <= i < j, got ({self.i}, {self.j})")
        if not math.isfinite(self.coeff):
            raise DomainError(f"XX term coefficient must be finite, got {self.coeff}")

    @property
    def flip_mask(self):
        return (1 << (self.i - 1)) | (1 << (self.j - 1))


@dataclass(frozen=True)
class XXHamiltonian:
    """Sum of XX terms on ``num_spins`` spins. All terms commute."""

    num_spins: int
    terms: tuple = ()
    _flips: np.ndarray = field(init=False, repr=False, compare=False)
    _coeffs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if self.num_spins < 1:
            raise DomainError(f"num_spins must be positive, got {self.num_spins}")
        seen = set()
        for t in terms:
            if t.j > self.num_spins:
                raise DomainError(f"term ({t.i}, {t.j}) outside {self.num_spins} spins")
            if (t.i, t.j) in seen:
                raise DomainError(f"duplicate term ({t.i}, {t.j})")
            seen.add((t.i, t.j))
        flips = np.array([t.flip_mask for t in terms], dtype=np.int64)
        coeffs = np.array([t.coeff for t in terms], dtype=np.float64)
        flips.setflags(write=False)
        coeffs.setflags(write=False)
        object.__setattr__(self, "_flips", flips)
        object.__setattr__(self, "_coeffs", coeffs)

    @property
    def flips(self):
        """int64 array of two-bit flip masks, one per term."""
        return self._flips

    @property
    def coeffs(self):
        return self._coeffs

    def term_set(self):
        return {(t.i, t.j, t.coeff) for t in self.terms}

    def shifted(self, offset, num_spins):
        """Same terms with every index moved up by ``offset`` on a wider register."""
        return XXHamiltonian(
            num_spins, tuple(XXTerm(t.i + offset, t.j + offset, t.coeff) for t in self.terms)
        )

    def permuted_terms(self, order):
        return XXHamiltonian(self.num_spins, tuple(self.terms[k] for k in order))

    def to_json(self):
        return {
            "num_spins": self.num_spins,
            "terms": [[t.i, t.j, t.coeff] for t in self.terms],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            terms = tuple(XXTerm(int(i), int(j), float(c)) for i, j, c in obj["terms"])
            return cls(int(obj["num_spins"]), terms)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DimensionError(f"malformed Hamiltonian JSON: {exc}") from None

    def dumps(self):
        return json.dumps(self.to_json())


def _even_symmetric(a):
    a = as_symmetric(a)
    if a.shape[0] % 2:
        raise ParityError(f"matrix dimension must be even (2N), got {a.shape[0]}")
    if a.shape[0] == 0:
        raise DimensionError("matrix must be non-empty")
    return a


def _pair_terms(weights, offset=0):
    n = weights.shape[0]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            c = float(weights[i, j])
            if c != 0.0:
                out.append(XXTerm(i + 1 + offset, j + 1 + offset, c))
    return out


def build_h1(a):
    """Off-diagonal couplings ``A_ij X_i X_j`` on 2N spins."""
    a = _even_symmetric(a)
    return XXHamiltonian(a.shape[0], tuple(_pair_terms(a)))


def build_h2(a):
    """Self-loop couplings ``A_ii A_jj X_{2N+i} X_{2N+j}`` on 4N spins."""
    a = _even_symmetric(a)
    n = a.shape[0]
    d = np.diag(a)
    return XXHamiltonian(2 * n, tuple(_pair_terms(np.outer(d, d), offset=n)))


def build_full(a):
    """``build_h1`` (spins 1..2N) plus ``build_h2`` (spins 2N+1..4N) on 4N spins."""
    a = _even_symmetric(a)
    n = a.shape[0]
    h1 = build_h1(a)
    h2 = build_h2(a)
    return XXHamiltonian(2 * n, h1.terms + h2.terms)


def one_norm(h):
    """Sum of absolute term coefficients."""
    return float(np.sum(np.abs(h.coeffs)))
