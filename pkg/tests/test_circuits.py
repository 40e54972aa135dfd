import json
import math

import numpy as np
import pytest

from spinhaf.circuits import (
    CNOT,
    CRY,
    RXX,
    RY,
    Circuit,
    Gate,
    X,
    apply_circuit,
    circuit_from_json,
    circuit_to_json,
    dicke_unitary_circuit,
    disentangler,
    emit,
    evolution_circuit,
    from_qasm2,
    phi1_circuit,
    theta_m,
    to_qasm2,
    v_circuit,
    zero_state,
)
from spinhaf.exceptions import DimensionError, DomainError
from spinhaf.matfun import loop_hafnian_enum
from spinhaf.spinham import XXHamiltonian, XXTerm, build_full
from spinhaf.statesim import basis_state, evolve, power_vector, weight_of_indices
from spinhaf.targetstates import dicke_state, double_factorial, norm_L, phi1_state

from conftest import dense_gate, random_state, random_symmetric, rel_err

from test_statesim import random_hamiltonian


def fidelity(a, b):
    return abs(np.vdot(a, b)) ** 2


def suffix_ones(n, w):
    # |0^{n-w} 1^w>: qubits n-w+1..n set
    return basis_state(n, ((1 << w) - 1) << (n - w))


def test_gate_validation():
    with pytest.raises(DomainError):
        Gate("SWAP", (1, 2))
    with pytest.raises(DomainError):
        CNOT(1, 1)
    with pytest.raises(DomainError):
        RY(float("nan"), 1)
    with pytest.raises(DomainError):
        Gate("X", (1,), 0.5)
    with pytest.raises(DimensionError):
        Circuit(2, (X(3),))


def test_apply_circuit_examples():
    psi = basis_state(1, 0)
    np.testing.assert_array_equal(apply_circuit(Circuit(1), psi), psi)
    np.testing.assert_array_equal(apply_circuit(Circuit(1, (X(1),)), psi), [0, 1])
    out = apply_circuit(Circuit(2, (RXX(math.pi, 1, 2),)), basis_state(2, 0))
    np.testing.assert_allclose(out, [0, 0, 0, -1j], atol=1e-15)
    with pytest.raises(DimensionError):
        apply_circuit(Circuit(2), basis_state(3, 0))


def test_ry_and_cry_conventions():
    theta = 0.8
    out = apply_circuit(Circuit(1, (RY(theta, 1),)), basis_state(1, 0))
    np.testing.assert_allclose(out, [math.cos(theta / 2), math.sin(theta / 2)], atol=1e-16)
    # control qubit 1 unset: nothing happens
    out = apply_circuit(Circuit(2, (CRY(theta, 1, 2),)), basis_state(2, 0))
    np.testing.assert_allclose(out, basis_state(2, 0))
    out = apply_circuit(Circuit(2, (CRY(theta, 1, 2),)), basis_state(2, 1))
    np.testing.assert_allclose(out, [0, math.cos(theta / 2), 0, math.sin(theta / 2)], atol=1e-16)
    out = apply_circuit(Circuit(2, (CNOT(1, 2),)), basis_state(2, 1))
    np.testing.assert_array_equal(out, basis_state(2, 3))


def test_unitarity_random_inputs(rng):
    for c in (phi1_circuit(2), dicke_unitary_circuit(6), v_circuit(3)):
        psi = random_state(rng, c.num_qubits)
        assert abs(np.linalg.norm(apply_circuit(c, psi)) - 1) < 1e-12


# --- evolution ---


def test_evolution_circuit_examples(rng):
    h = random_hamiltonian(rng, 5)
    c = evolution_circuit(h, 0.0)
    assert all(g.theta == 0.0 for g in c.gates)
    psi = random_state(rng, 5)
    np.testing.assert_allclose(apply_circuit(c, psi), psi, atol=1e-15)

    h = XXHamiltonian(2, (XXTerm(1, 2, 0.9),))
    c = evolution_circuit(h, 0.3)
    assert c.gates == (RXX(2 * 0.9 * 0.3, 1, 2),)
    psi = basis_state(2, 0)
    np.testing.assert_allclose(apply_circuit(c, psi), evolve(h, 0.3, psi), atol=1e-12)


@pytest.mark.parametrize("n", [4, 7, 10])
@pytest.mark.parametrize("t", [0.05, 1.3])
def test_evolution_circuit_matches_kernel(rng, n, t):
    h = random_hamiltonian(rng, n)
    c = evolution_circuit(h, t)
    assert len(c) <= math.comb(n, 2)
    psi = random_state(rng, n)
    ref = evolve(h, t, psi)
    np.testing.assert_allclose(apply_circuit(c, psi), ref, atol=1e-10)
    shuffled = Circuit(n, tuple(c.gates[k] for k in rng.permutation(len(c))))
    np.testing.assert_allclose(apply_circuit(shuffled, psi), ref, atol=1e-12)


# --- ladder ---


def test_theta_m_examples():
    assert theta_m(1, 0) == pytest.approx(math.pi / 2, rel=1e-15)
    for N in range(1, 7):
        for m in range(N):
            assert 0.0 <= theta_m(N, m) <= math.pi
    with pytest.raises(DomainError):
        theta_m(2, 2)


def ladder_coefficients(N):
    L = norm_L(N).value
    return [math.sqrt(math.comb(2 * N, 2 * k)) / double_factorial(2 * (N - k) - 1) / L for k in range(N + 1)]


def test_v_circuit_n1():
    c = v_circuit(1)
    assert [(g.kind, g.qubits) for g in c.gates] == [("RY", (2,)), ("CNOT", (2, 1))]
    assert c.gates[0].theta == pytest.approx(math.pi / 2, rel=1e-15)
    out = apply_circuit(c, zero_state(2))
    np.testing.assert_allclose(out, [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)], atol=1e-15)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_v_circuit_amplitude_ladder(N):
    out = apply_circuit(v_circuit(N), zero_state(2 * N))
    assert abs(np.linalg.norm(out) - 1) < 1e-12
    expected = np.zeros(1 << (2 * N), dtype=complex)
    for k, c in enumerate(ladder_coefficients(N)):
        expected[suffix_ones(2 * N, 2 * k).argmax()] = c
    np.testing.assert_allclose(out, expected, atol=1e-12)


# --- Dicke ---


def test_dicke_examples():
    c = dicke_unitary_circuit(4)
    np.testing.assert_allclose(apply_circuit(c, suffix_ones(4, 0)), basis_state(4, 0), atol=1e-14)
    np.testing.assert_allclose(apply_circuit(c, suffix_ones(4, 4)), basis_state(4, 15), atol=1e-14)
    out = apply_circuit(c, suffix_ones(4, 2))
    np.testing.assert_allclose(out, dicke_state(4, 2), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8])
def test_dicke_contract_all_weights(n):
    c = dicke_unitary_circuit(n)
    for w in range(n + 1):
        assert fidelity(dicke_state(n, w), apply_circuit(c, suffix_ones(n, w))) >= 1 - 1e-10


def test_dicke_gate_count_quadratic():
    # one split-and-shift block per l costs 7l - 11 gates
    for n in range(2, 27):
        c = dicke_unitary_circuit(n)
        assert len(c) == sum(7 * l - 11 for l in range(2, n + 1))
        assert len(c) <= 4 * n * n


# --- phi1 ---


def test_phi1_circuit_n1():
    out = apply_circuit(phi1_circuit(1), zero_state(4))
    np.testing.assert_allclose(out, phi1_state(1), atol=1e-12)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_phi1_circuit_fidelity(N):
    out = apply_circuit(phi1_circuit(N), zero_state(4 * N))
    assert fidelity(phi1_state(N), out) >= 1 - 1e-10
    support = np.nonzero(np.abs(out) > 1e-12)[0]
    assert set(weight_of_indices(4 * N)[support]) == {2 * N}


def test_phi1_circuit_loop_hafnian(rng):
    N = 2
    a = random_symmetric(rng, 2 * N)
    out = apply_circuit(phi1_circuit(N), zero_state(4 * N))
    vec = power_vector(build_full(a), N, basis_state(4 * N, 0))
    amp = np.vdot(out, vec)
    assert abs(amp.imag) < 1e-12
    assert rel_err(amp.real, math.factorial(N) / norm_L(N).value * loop_hafnian_enum(a)) < 1e-9


def test_disentangler_involution(rng):
    c = disentangler(2)
    psi = random_state(rng, 8)
    np.testing.assert_allclose(apply_circuit(c, apply_circuit(c, psi)), psi, atol=1e-15)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_disentangled_product_state(N):
    two_n = 2 * N
    out = apply_circuit(disentangler(N), phi1_state(N))
    # rows: second register, columns: first register
    mat = out.reshape(1 << two_n, 1 << two_n)
    sv = np.linalg.svd(mat, compute_uv=False)
    assert sv[0] ** 2 == pytest.approx(1.0, abs=1e-10)
    assert np.sum(sv[1:] ** 2) < 1e-10
    # second register is |1...1>
    assert np.linalg.norm(mat[-1]) == pytest.approx(1.0, abs=1e-12)


def test_phi1_gate_count_quadratic():
    for N in range(1, 7):
        assert len(phi1_circuit(N)) <= 16 * N * N


# --- emission ---


def test_emit_examples():
    text = emit(Circuit(3), "qasm2")
    assert text == 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\n'
    text = emit(Circuit(3, (X(1),)), "qasm2")
    assert text.splitlines()[3:] == ["x q[0];"]
    assert json.loads(emit(Circuit(2), "json")) == {"num_qubits": 2, "gates": []}
    with pytest.raises(DomainError):
        emit(Circuit(1), "quil")


def test_json_roundtrip_phi1():
    c = phi1_circuit(1)
    back = circuit_from_json(json.loads(emit(c, "json")))
    assert back == c
    np.testing.assert_allclose(apply_circuit(back, zero_state(4)), apply_circuit(c, zero_state(4)), atol=1e-12)


def test_json_schema():
    obj = circuit_to_json(Circuit(2, (CRY(0.5, 1, 2), CNOT(2, 1))))
    assert obj == {
        "num_qubits": 2,
        "gates": [{"kind": "CRY", "qubits": [1, 2], "theta": 0.5}, {"kind": "CNOT", "qubits": [2, 1]}],
    }


@pytest.mark.parametrize("N", [1, 2])
def test_qasm_roundtrip_decomposes_cry(N):
    c = phi1_circuit(N)
    text = emit(c, "qasm2")
    assert "cry" not in text
    back = from_qasm2(text)
    assert back.count("CRY") == 0
    assert back.count("CNOT") == c.count("CNOT") + 2 * c.count("CRY")
    np.testing.assert_allclose(
        apply_circuit(back, zero_state(4 * N)), apply_circuit(c, zero_state(4 * N)), atol=1e-12
    )


def test_qasm_roundtrip_evolution(rng):
    h = random_hamiltonian(rng, 5)
    c = evolution_circuit(h, 0.4)
    back = from_qasm2(to_qasm2(c))
    assert back == c
    assert "rxx(" in to_qasm2(c)


def test_qasm_qubits_are_zero_based():
    assert to_qasm2(Circuit(4, (CNOT(1, 4),))).splitlines()[-1] == "cx q[0],q[3];"


# --- dense-matrix oracle ---


@pytest.mark.parametrize(
    "gate",
    [RXX(0.37, 1, 3), RXX(-1.2, 4, 2), RY(0.9, 2), CRY(1.1, 3, 1), CRY(-0.4, 1, 4), CNOT(4, 2), CNOT(1, 3), X(3)],
    ids=repr,
)
def test_gate_matches_dense_matrix(rng, gate):
    psi = random_state(rng, 4)
    out = apply_circuit(Circuit(4, (gate,)), psi)
    np.testing.assert_allclose(out, dense_gate(gate, 4) @ psi, atol=1e-13)


def test_phi1_circuit_matches_dense_product(rng):
    c = phi1_circuit(1)
    psi = random_state(rng, 4)
    u = np.eye(16)
    for g in c.gates:
        u = dense_gate(g, 4) @ u
    np.testing.assert_allclose(apply_circuit(c, psi), u @ psi, atol=1e-12)
