"""Exact simulation of commuting-XX Ising encodings of matrix functions.

Transition amplitudes of powers of an XX Hamiltonian built from a real
symmetric matrix reproduce the hafnian (and permanent) of principal
submatrices; a Dicke-like target state on a doubled register turns them into
the loop-hafnian. This package builds those Hamiltonians, simulates them
exactly on dense statevectors, synthesizes the state-preparation circuit and
checks everything against brute-force combinatorics.
"""

from ._kernels import BACKEND
from .circuits import (
    Circuit,
    Gate,
    apply_circuit,
    dicke_unitary_circuit,
    emit,
    evolution_circuit,
    phi1_circuit,
    theta_m,
    v_circuit,
)
from .estimate import (
    EstimateReport,
    hadamard_test_sample,
    lhaf_from_overlap,
    submatrix_distribution,
)
from .matfun import (
    embed_bipartite,
    hafnian,
    hafnian_enum,
    loop_hafnian,
    loop_hafnian_enum,
    permanent,
    permanent_enum,
)
from .spinham import XXHamiltonian, XXTerm, build_full, build_h1, build_h2, one_norm
from .statesim import (
    apply_h,
    basis_state,
    evolve,
    overlap,
    transition_amplitude,
    transition_amplitude_4n,
)
from .targetstates import (
    dicke_state,
    double_factorial,
    norm_L,
    norm_L_truncated,
    phi1_state,
    phi1_state_truncated,
)

__version__ = "0.1.0"
