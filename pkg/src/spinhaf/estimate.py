"""Loop-hafnian estimation from short-time overlaps, and submatrix sampling.

For small ``t``,

    <phi1| exp(-i H t) |0> = (-i t)^N / L_N * lhaf(A) + O(t^{N+2}),

so ``L_N * overlap / (-i t)^N`` estimates ``lhaf(A)``. The order ``t^{N+1}``
term does not vanish (a step may flip one spin up and another down), but it
is a quarter turn out of phase with the leading term: the real part carries
O(t^2) relative error while the imaginary residue is O(t).
"""

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .bits import masks_of_weight
from .exceptions import DegenerateSectorError, DomainError, SizeLimitError
from .matfun import (
    MAX_LOOP_HAFNIAN_ENUM_DIM,
    as_symmetric,
    hafnian_table,
    loop_hafnian,
    loop_hafnian_enum,
)
from .spinham import build_full, build_h1, one_norm
from .statesim import MAX_SPINS, basis_state, evolve
from .targetstates import norm_L, phi1_state

REL_ERROR_FLOOR = 1e-300
# above this size the enumeration oracle is too slow for interactive use
_ENUM_ORACLE_DIM = 10


def default_time(h):
    """``0.1 / max(||H||_1, 1)``: keeps the leading power dominant without underflow."""
    return 0.1 / max(one_norm(h), 1.0)


@dataclass(frozen=True)
class EstimateReport:
    t: float
    raw_overlap: complex
    estimate: float
    imag_residue: float
    oracle: float
    rel_error: float

    def to_json(self):
        d = asdict(self)
        d["raw_overlap"] = [self.raw_overlap.real, self.raw_overlap.imag]
        return d


def _check_model_size(a):
    two_n = a.shape[0]
    if two_n == 0 or two_n % 2:
        raise DomainError(f"need a non-empty 2N x 2N matrix, got dimension {two_n}")
    if 2 * two_n > MAX_SPINS:
        raise SizeLimitError(f"4N = {2 * two_n} spins exceeds the {MAX_SPINS}-spin cap")
    return two_n // 2


def exact_overlap(a, t):
    """``<phi1| exp(-i H t) |0^{4N}>`` on the full model of ``a``."""
    a = as_symmetric(a)
    N = _check_model_size(a)
    h = build_full(a)
    psi = evolve(h, t, basis_state(h.num_spins, 0))
    return complex(np.vdot(phi1_state(N), psi))


def _oracle(a):
    if a.shape[0] <= min(_ENUM_ORACLE_DIM, MAX_LOOP_HAFNIAN_ENUM_DIM):
        return loop_hafnian_enum(a)
    return loop_hafnian(a)


def lhaf_from_overlap(a, t=None):
    """Estimate ``lhaf(a)`` from the exact short-time overlap at time ``t``.

    ``t`` defaults to :func:`default_time` of the full Hamiltonian. The real
    part is the estimate; the imaginary part is returned as ``imag_residue``.
    """
    a = as_symmetric(a)
    N = _check_model_size(a)
    if t is None:
        t = default_time(build_full(a))
    t = float(t)
    if t == 0.0 or not math.isfinite(t):
        raise DomainError(f"t must be finite and nonzero, got {t}")
    raw = exact_overlap(a, t)
    scaled = norm_L(N).value * raw / (-1j * t) ** N
    oracle = _oracle(a)
    rel = abs(scaled.real - oracle) / max(abs(oracle), REL_ERROR_FLOOR)
    return EstimateReport(t, raw, float(scaled.real), float(scaled.imag), float(oracle), float(rel))


class HadamardEstimate(NamedTuple):
    re: float
    im: float
    #: larger of the two binomial standard errors
    stderr: float


def hadamard_probabilities(z):
    """Probabilities of outcome 0 for the real and phase-shifted Hadamard tests of ``z``."""
    return 0.5 * (1.0 + z.real), 0.5 * (1.0 + z.imag)


def hadamard_test_sample(a, t=None, shots=1000, seed=None):
    """Shot-noise estimate of ``<phi1| exp(-i H t) |0>``.

    Models Hadamard tests on ``W = P^dagger exp(-i H t)``, where ``P`` prepares
    ``|phi1>`` from ``|0>``, so ``<0|W|0>`` is the overlap. Each test is a
    binomial draw with success probability ``(1 + Re)/2`` or ``(1 + Im)/2``.
    """
    if shots < 1:
        raise DomainError(f"shots must be a positive integer, got {shots}")
    a = as_symmetric(a)
    if t is None:
        _check_model_size(a)
        t = default_time(build_full(a))
    z = exact_overlap(a, t)
    p_re, p_im = hadamard_probabilities(z)
    rng = np.random.default_rng(seed)
    hits_re = rng.binomial(shots, min(max(p_re, 0.0), 1.0))
    hits_im = rng.binomial(shots, min(max(p_im, 0.0), 1.0))
    est = []
    errs = []
    for hits in (hits_re, hits_im):
        p = hits / shots
        est.append(2.0 * p - 1.0)
        errs.append(2.0 * math.sqrt(p * (1.0 - p) / shots))
    return HadamardEstimate(est[0], est[1], max(errs))


# --- fixed-weight submatrix sampling (hafnian case) ------------------------


def _check_sampling_args(a, k):
    a = as_symmetric(a)
    if np.any(np.diag(a)):
        raise DomainError("submatrix sampling needs a zero-diagonal matrix")
    two_n = a.shape[0]
    if two_n == 0 or two_n % 2:
        raise DomainError(f"need a non-empty 2N x 2N matrix, got dimension {two_n}")
    if two_n > MAX_SPINS:
        raise SizeLimitError(f"2N = {two_n} spins exceeds the {MAX_SPINS}-spin cap")
    if not 1 <= k <= two_n // 2:
        raise DomainError(f"k must satisfy 1 <= k <= N = {two_n // 2}, got {k}")
    return a


def submatrix_distribution(a, t, k):
    """Postselected output law on the weight-``2k`` sector after ``exp(-i H1 t)|0>``.

    Returns ``{mask: probability}`` over all subsets of size ``2k``. To
    leading order in ``t`` the probabilities follow ``|haf(A_S)|^2``.
    """
    a = _check_sampling_args(a, k)
    h = build_h1(a)
    psi = evolve(h, t, basis_state(h.num_spins, 0))
    masks = list(masks_of_weight(a.shape[0], 2 * k))
    probs = np.abs(psi[masks]) ** 2
    total = float(np.sum(probs))
    if total == 0.0:
        raise DegenerateSectorError(f"weight-{2 * k} sector has zero mass at t = {t}")
    return {m: float(p / total) for m, p in zip(masks, probs)}


def hafnian_law(a, k):
    """Leading-order sector law: ``|haf(A_S)|^2`` normalized over ``|S| = 2k``."""
    a = _check_sampling_args(a, k)
    table = hafnian_table(a)
    masks = list(masks_of_weight(a.shape[0], 2 * k))
    weights = table[masks] ** 2
    total = float(np.sum(weights))
    if total == 0.0:
        raise DegenerateSectorError(f"all hafnians vanish on the weight-{2 * k} sector")
    return {m: float(w / total) for m, w in zip(masks, weights)}


def distribution_to_json(probs, k, t):
    return {"k": k, "t": t, "probs": {str(m): p for m, p in probs.items()}}
