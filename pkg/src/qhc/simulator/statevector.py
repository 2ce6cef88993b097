"""Exact little-endian statevector simulation.

Qubit 0 is the least-significant bit of the basis index. Single-qubit gates update
amplitude pairs that sit ``2**target`` apart, so each gate costs O(2**n).
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

import numpy as np

from qhc.models.specs import MAX_QUBITS
from qhc.simulator.gates import Gate
from qhc.utils.exceptions import ConfigError, UsageError

logger = logging.getLogger(__name__)


@dataclass
class StateVector:
    """2**n_qubits complex amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (2**self.n_qubits,):
            raise UsageError(
                f"{self.n_qubits} qubits need {2**self.n_qubits} amplitudes, "
                f"got shape {self.amplitudes.shape}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass
class Circuit:
    """Ordered gate list on a fixed number of qubits."""

    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        _check_qubit_count(self.n_qubits)
        for gate in self.gates:
            _check_targets(gate, self.n_qubits)

    def append(self, gate: Gate) -> Circuit:
        _check_targets(gate, self.n_qubits)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        for gate in gates:
            self.append(gate)
        return self

    def compose(self, other: Circuit) -> Circuit:
        """This circuit followed by ``other``."""
        if other.n_qubits != self.n_qubits:
            raise UsageError(f"cannot compose {self.n_qubits}- and {other.n_qubits}-qubit circuits")
        return Circuit(self.n_qubits, [*self.gates, *other.gates])

    def inverse(self) -> Circuit:
        return Circuit(self.n_qubits, [g.inverse() for g in reversed(self.gates)])

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)


def zero_state(n_qubits: int) -> StateVector:
    """|0...0> on ``n_qubits`` qubits."""
    _check_qubit_count(n_qubits)
    amplitudes = np.zeros(2**n_qubits, dtype=np.complex128)
    amplitudes[0] = 1.0
    return StateVector(n_qubits, amplitudes)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Return a new state with ``gate`` applied."""
    _check_targets(gate, state.n_qubits)
    amplitudes = state.amplitudes.copy()
    apply_inplace(amplitudes, gate, state.n_qubits)
    return StateVector(state.n_qubits, amplitudes)


def run_circuit(circuit: Circuit, state: StateVector) -> StateVector:
    """Apply every gate of ``circuit`` in order, starting from ``state``."""
    if circuit.n_qubits != state.n_qubits:
        raise UsageError(
            f"circuit has {circuit.n_qubits} qubits but state has {state.n_qubits}"
        )
    amplitudes = state.amplitudes.copy()
    for gate in circuit.gates:
        apply_inplace(amplitudes, gate, circuit.n_qubits)
    return StateVector(state.n_qubits, amplitudes)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense 2**n x 2**n unitary of ``circuit``, column k being U|k>."""
    dim = 2**circuit.n_qubits
    columns = np.eye(dim, dtype=np.complex128)
    for gate in circuit.gates:
        apply_inplace(columns, gate, circuit.n_qubits)
    return columns


def prob_qubit_one(state: StateVector, qubit: int) -> float:
    """Probability of measuring |1> on ``qubit``."""
    if not 0 <= qubit < state.n_qubits:
        raise UsageError(f"qubit {qubit} out of range for {state.n_qubits} qubits")
    probs = state.probabilities().reshape(2 ** (state.n_qubits - qubit - 1), 2, 2**qubit)
    return float(probs[:, 1, :].sum())


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b> = sum_k conj(a_k) b_k."""
    if a.n_qubits != b.n_qubits:
        raise UsageError(f"inner product of {a.n_qubits}- and {b.n_qubits}-qubit states")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def apply_inplace(amplitudes: np.ndarray, gate: Gate, n_qubits: int) -> None:
    """Apply ``gate`` along axis 0 of a C-contiguous ``(2**n, ...)`` array.

    Trailing axes are batch axes, which is how ``circuit_unitary`` pushes every basis
    column through a circuit at once.
    """
    if gate.is_two_qubit:
        control, target = gate.targets
        src, dst = _cnot_pairs(n_qubits, control, target)
        flipped = amplitudes[dst].copy()
        amplitudes[dst] = amplitudes[src]
        amplitudes[src] = flipped
        return

    (target,) = gate.targets
    m = gate.matrix()
    pairs = amplitudes.reshape((2 ** (n_qubits - target - 1), 2, 2**target) + amplitudes.shape[1:])
    low = pairs[:, 0].copy()
    high = pairs[:, 1].copy()
    pairs[:, 0] = m[0, 0] * low + m[0, 1] * high
    pairs[:, 1] = m[1, 0] * low + m[1, 1] * high


@functools.lru_cache(maxsize=256)
def _cnot_pairs(n_qubits: int, control: int, target: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis indices with control=1,target=0 and their target-flipped partners."""
    index = np.arange(2**n_qubits)
    src = index[((index >> control) & 1 == 1) & ((index >> target) & 1 == 0)]
    return src, src | (1 << target)


def _check_qubit_count(n_qubits: int) -> None:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ConfigError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")


def _check_targets(gate: Gate, n_qubits: int) -> None:
    if any(q >= n_qubits for q in gate.targets):
        raise UsageError(f"{gate.kind} targets {gate.targets} outside {n_qubits} qubits")
