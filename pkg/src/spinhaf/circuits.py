"""Gate-level circuits: exact XX evolution and |phi1> preparation.

Gate conventions (qubit indices are 1-based; qubit ``i`` is state bit ``i - 1``):

* ``RXX(theta, i, j) = exp(-i theta X_i X_j / 2)``
* ``RY(theta, i)     = exp(-i theta Y_i / 2)``
* ``CRY(theta, c, t)``: ``RY(theta)`` on ``t`` when ``c`` is 1
* ``CNOT(c, t)`` and ``X(i)``

Circuits apply their gates left to right.
"""

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exceptions import DimensionError, DomainError
from .statesim import as_state, check_num_spins
from .targetstates import double_factorial

GATE_ARITY = {"RXX": 2, "RY": 1, "CRY": 2, "CNOT": 2, "X": 1}
PARAMETRIC = {"RXX", "RY", "CRY"}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    theta: float = None

    def __post_init__(self):
        if self.kind not in GATE_ARITY:
            raise DomainError(f"unknown gate kind {self.kind!r}")
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(qubits) != GATE_ARITY[self.kind]:
            raise DomainError(f"{self.kind} takes {GATE_ARITY[self.kind]} qubits, got {qubits}")
        if len(set(qubits)) != len(qubits):
            raise DomainError(f"{self.kind} operands must be distinct, got {qubits}")
        if any(q < 1 for q in qubits):
            raise DomainError(f"qubit indices are 1-based, got {qubits}")
        if self.kind in PARAMETRIC:
            if self.theta is None or not math.isfinite(self.theta):
                raise DomainError(f"{self.kind} needs a finite angle, got {self.theta}")
            object.__setattr__(self, "theta", float(self.theta))
        elif self.theta is not None:
            raise DomainError(f"{self.kind} takes no angle")


def RXX(theta, i, j):
    return Gate("RXX", (i, j), theta)


def RY(theta, i):
    return Gate("RY", (i,), theta)


def CRY(theta, control, target):
    return Gate("CRY", (control, target), theta)


def CNOT(control, target):
    return Gate("CNOT", (control, target))


def X(i):
    return Gate("X", (i,))


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple = ()

    def __post_init__(self):
        check_num_spins(self.num_qubits)
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        for g in gates:
            if max(g.qubits) > self.num_qubits:
                raise DimensionError(
                    f"gate {g.kind}{g.qubits} exceeds circuit width {self.num_qubits}"
                )

    def __len__(self):
        return len(self.gates)

    def then(self, other, offset=0):
        """This circuit followed by ``other`` placed on qubits ``offset+1..``."""
        moved = tuple(
            Gate(g.kind, tuple(q + offset for q in g.qubits), g.theta) for g in other.gates
        )
        return Circuit(self.num_qubits, self.gates + moved)

    def count(self, kind=None):
        if kind is None:
            return len(self.gates)
        return sum(1 for g in self.gates if g.kind == kind)

    def two_qubit_count(self):
        return sum(1 for g in self.gates if len(g.qubits) == 2)


# --- simulation ------------------------------------------------------------


def _apply_gate(psi, g):
    q = [x - 1 for x in g.qubits]
    if g.kind == "RXX":
        half = 0.5 * g.theta
        flips = np.array([(1 << q[0]) | (1 << q[1])], dtype=np.int64)
        _kernels.rotate_xx(psi, flips, np.array([math.cos(half)]), np.array([math.sin(half)]))
        return
    if g.kind in ("RY", "CRY"):
        c, s = math.cos(0.5 * g.theta), math.sin(0.5 * g.theta)
        m = (c, -s, s, c)
    else:
        m = (0.0, 1.0, 1.0, 0.0)
    control, target = (q[0], q[1]) if len(q) == 2 else (-1, q[0])
    _kernels.apply_1q(psi, target, complex(m[0]), complex(m[1]), complex(m[2]), complex(m[3]), control)


def apply_circuit(circuit, psi):
    """Simulate ``circuit`` on a copy of ``psi``."""
    out = as_state(psi, circuit.num_qubits).copy()
    for g in circuit.gates:
        _apply_gate(out, g)
    return out


def zero_state(num_qubits):
    psi = np.zeros(1 << check_num_spins(num_qubits), dtype=np.complex128)
    psi[0] = 1.0
    return psi


# --- exact time evolution --------------------------------------------------


def evolution_circuit(h, t):
    """``exp(-i H t)`` as one ``RXX(2 c t)`` per term, in term order.

    The terms commute, so this is exact.
    """
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"evolution time must be finite, got {t}")
    return Circuit(h.num_spins, tuple(RXX(2.0 * term.coeff * t, term.i, term.j) for term in h.terms))


# --- |phi1> preparation ----------------------------------------------------


def _ladder_weight(N, k):
    return math.comb(2 * N, 2 * k) / double_factorial(2 * (N - k) - 1) ** 2


def theta_m(N, m):
    """Rotation angle of step ``m`` of the amplitude ladder.

    ``cos(theta_m / 2)`` is the share of tier ``m`` among tiers ``m..N``.
    """
    if N < 1 or not 0 <= m <= N - 1:
        raise DomainError(f"theta_m needs 0 <= m <= N - 1 with N >= 1, got N={N}, m={m}")
    num = math.sqrt(math.comb(2 * N, 2 * m)) / double_factorial(2 * (N - m) - 1)
    den = math.sqrt(math.fsum(_ladder_weight(N, k) for k in range(m, N + 1)))
    return 2.0 * math.acos(min(1.0, max(-1.0, num / den)))


def v_circuit(N):
    """Ladder mapping ``|0^{2N}>`` to ``sum_k c_k |0^{2(N-k)} 1^{2k}>``.

    Step ``m`` rotates qubit ``2N-2m`` (controlled on ``2N+1-2m`` for ``m > 0``)
    and copies it onto qubit ``2N-2m-1``.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    two_n = 2 * N
    gates = []
    for m in range(N):
        theta = theta_m(N, m)
        tgt = two_n - 2 * m
        if m == 0:
            gates.append(RY(theta, tgt))
        else:
            gates.append(CRY(theta, tgt + 1, tgt))
        gates.append(CNOT(tgt, tgt - 1))
    return Circuit(two_n, tuple(gates))


def _ccry(theta, a, b, target):
    # doubly controlled RY from CRY and CNOT; a and b are restored
    return [
        CRY(0.5 * theta, a, target),
        CNOT(a, b),
        CRY(-0.5 * theta, b, target),
        CNOT(a, b),
        CRY(0.5 * theta, b, target),
    ]


def _split_cyclic_shift(l, k):
    # acts on qubits l-k..l; |0^{l-w} 1^w> -> sqrt(w/l) same + sqrt((l-w)/l) one-shifted
    gates = [
        CNOT(l - 1, l),
        CRY(2.0 * math.acos(math.sqrt(1.0 / l)), l, l - 1),
        CNOT(l - 1, l),
    ]
    for j in range(2, k + 1):
        gates.append(CNOT(l - j, l))
        gates.extend(_ccry(2.0 * math.acos(math.sqrt(j / l)), l, l - j + 1, l - j))
        gates.append(CNOT(l - j, l))
    return gates


def dicke_unitary_circuit(n):
    """Unitary taking ``|0^{n-w} 1^w>`` to the weight-``w`` Dicke state, for every ``w``.

    Built from split-and-cyclic-shift blocks (Bartschi and Eidenbenz), with
    doubly controlled rotations expanded into CRY and CNOT; O(n^2) gates.
    """
    check_num_spins(n)
    gates = []
    for l in range(n, 1, -1):
        gates.extend(_split_cyclic_shift(l, l - 1))
    return Circuit(n, tuple(gates))


def phi1_circuit(N):
    """Prepare ``|phi1>`` on 4N qubits from ``|0^{4N}>``.

    X on the second register, the ladder and Dicke unitary on the first, then
    ``CNOT(i, 2N+i)`` writes the complement pattern into the second register.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    two_n = 2 * N
    c = Circuit(2 * two_n, tuple(X(two_n + i) for i in range(1, two_n + 1)))
    c = c.then(v_circuit(N))
    c = c.then(dicke_unitary_circuit(two_n))
    return c.then(Circuit(2 * two_n, tuple(CNOT(i, two_n + i) for i in range(1, two_n + 1))))


def disentangler(N):
    """The CNOT layer ``CNOT(i, 2N+i)`` for ``i = 1..2N``."""
    two_n = 2 * N
    return Circuit(2 * two_n, tuple(CNOT(i, two_n + i) for i in range(1, two_n + 1)))


# --- serialization ---------------------------------------------------------

QASM_HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";'
_QASM_NAMES = {"RXX": "rxx", "RY": "ry", "CNOT": "cx", "X": "x"}


def circuit_to_json(circuit):
    gates = []
    for g in circuit.gates:
        entry = {"kind": g.kind, "qubits": list(g.qubits)}
        if g.theta is not None:
            entry["theta"] = g.theta
        gates.append(entry)
    return {"num_qubits": circuit.num_qubits, "gates": gates}


def circuit_from_json(obj):
    try:
        gates = tuple(Gate(e["kind"], tuple(e["qubits"]), e.get("theta")) for e in obj["gates"])
        return Circuit(int(obj["num_qubits"]), gates)
    except (KeyError, TypeError, AttributeError) as exc:
        raise DimensionError(f"malformed circuit JSON: {exc!r}") from None


def _qasm_lines(g):
    q = [f"q[{x - 1}]" for x in g.qubits]
    if g.kind == "CRY":
        # two-CNOT controlled rotation
        c, t = q
        return [
            f"ry({0.5 * g.theta!r}) {t};",
            f"cx {c},{t};",
            f"ry({-0.5 * g.theta!r}) {t};",
            f"cx {c},{t};",
        ]
    name = _QASM_NAMES[g.kind]
    if g.theta is not None:
        name = f"{name}({g.theta!r})"
    return [f"{name} {','.join(q)};"]


def to_qasm2(circuit):
    lines = [QASM_HEADER, f"qreg q[{circuit.num_qubits}];"]
    for g in circuit.gates:
        lines.extend(_qasm_lines(g))
    return "\n".join(lines) + "\n"


_QASM_STMT = re.compile(r"^(rxx|ry|cx|x)(?:\(([^)]*)\))?\s+(.+);$")
_QASM_QUBIT = re.compile(r"^q\[(\d+)\]$")
_FROM_QASM = {v: k for k, v in _QASM_NAMES.items()}


def from_qasm2(text):
    """Parse the OpenQASM 2.0 subset written by :func:`to_qasm2`."""
    width = None
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("//") or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        if line.startswith("qreg"):
            width = int(re.match(r"qreg\s+q\[(\d+)\];", line).group(1))
            continue
        m = _QASM_STMT.match(line)
        if m is None:
            raise DomainError(f"unsupported QASM statement: {line!r}")
        name, arg, operands = m.groups()
        qubits = []
        for tok in operands.split(","):
            qm = _QASM_QUBIT.match(tok.strip())
            if qm is None:
                raise DomainError(f"bad operand {tok!r} in {line!r}")
            qubits.append(int(qm.group(1)) + 1)
        theta = float(arg) if arg is not None else None
        gates.append(Gate(_FROM_QASM[name], tuple(qubits), theta))
    if width is None:
        raise DomainError("QASM text declares no qreg")
    return Circuit(width, tuple(gates))


def emit(circuit, fmt):
    """Serialize as ``"json"`` (circuit schema) or ``"qasm2"`` (OpenQASM 2.0 text)."""
    if fmt == "json":
        return json.dumps(circuit_to_json(circuit))
    if fmt == "qasm2":
        return to_qasm2(circuit)
    raise DomainError(f"unknown circuit format {fmt!r}; expected 'json' or 'qasm2'")
