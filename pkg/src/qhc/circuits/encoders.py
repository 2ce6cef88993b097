"""Data-embedding circuits: amplitude encoding, U2 re-uploading map, Pauli ZZ map.

Data angles are ``2*pi*x`` for inputs scaled to [0, 1].
"""

from __future__ import annotations

import math

import numpy as np

from qhc.circuits.variational import entangler
from qhc.models.enums import FeatureMapKind
from qhc.models.specs import (
    PAULI_ZZ_DIM,
    PAULI_ZZ_QUBITS,
    U2_REUPLOADING_DIM,
    U2_REUPLOADING_QUBITS,
    FeatureMapSpec,
)
from qhc.simulator import gates
from qhc.simulator.statevector import Circuit, StateVector, run_circuit, zero_state
from qhc.utils.exceptions import DegenerateInputError, UsageError

TWO_PI = 2 * math.pi
_ZERO_NORM = 1e-12


def amplitude_encode(x: np.ndarray, n_qubits: int) -> StateVector:
    """Zero-pad ``x`` to 2**n_qubits entries and normalise it into amplitudes.

    Raises:
        UsageError: If ``x`` is empty or longer than 2**n_qubits.
        DegenerateInputError: If ``x`` has (numerically) zero norm.
    """
    template = zero_state(n_qubits)
    values = np.asarray(x, dtype=np.float64)
    if values.ndim != 1 or not 1 <= values.size <= template.amplitudes.size:
        raise UsageError(
            f"amplitude encoding on {n_qubits} qubits takes 1..{template.amplitudes.size} "
            f"features, got shape {values.shape}"
        )
    norm = float(np.linalg.norm(values))
    if not math.isfinite(norm) or norm <= _ZERO_NORM:
        raise DegenerateInputError(f"cannot amplitude-encode a vector of norm {norm:g}")
    amplitudes = np.zeros_like(template.amplitudes)
    amplitudes[: values.size] = values / norm
    return StateVector(n_qubits, amplitudes)


def u2_reuploading_map(x: np.ndarray) -> Circuit:
    """8-qubit encoder uploading each of the 16 features twice through U2 gates.

    Block r in {0, 1} gives qubit q the gate U2(2pi x[(2q+8r) % 16], 2pi x[(2q+1+8r) % 16])
    and ends with the cascade CNOT(q, q+1), q = 0..6.
    """
    values = _check_dim(x, U2_REUPLOADING_DIM, "u2_reuploading")
    circuit = Circuit(U2_REUPLOADING_QUBITS)
    for block in range(2):
        offset = 8 * block
        for q in range(U2_REUPLOADING_QUBITS):
            phi = TWO_PI * values[(2 * q + offset) % U2_REUPLOADING_DIM]
            lam = TWO_PI * values[(2 * q + 1 + offset) % U2_REUPLOADING_DIM]
            circuit.append(gates.u2(q, phi, lam))
        circuit.extend(entangler(U2_REUPLOADING_QUBITS))
    return circuit


def pauli_zz_feature_map(x: np.ndarray, reps: int = 2) -> Circuit:
    """4-qubit map of Hadamards, RZ data rotations, and CNOT-conjugated pairwise RZ."""
    if reps < 1:
        raise UsageError(f"reps must be >= 1, got {reps}")
    values = _check_dim(x, PAULI_ZZ_DIM, "pauli_zz")
    circuit = Circuit(PAULI_ZZ_QUBITS)
    for _ in range(reps):
        circuit.extend(gates.h(q) for q in range(PAULI_ZZ_QUBITS))
        circuit.extend(gates.rz(q, TWO_PI * values[q]) for q in range(PAULI_ZZ_QUBITS))
        for q in range(PAULI_ZZ_QUBITS - 1):
            angle = 2 * (math.pi - math.pi * values[q]) * (math.pi - math.pi * values[q + 1])
            circuit.append(gates.cnot(q, q + 1))
            circuit.append(gates.rz(q + 1, angle))
            circuit.append(gates.cnot(q, q + 1))
    return circuit


def feature_map_circuit(x: np.ndarray, spec: FeatureMapSpec) -> Circuit:
    """Circuit form of a gate-based feature map."""
    match spec.kind:
        case FeatureMapKind.U2_REUPLOADING:
            return u2_reuploading_map(x)
        case FeatureMapKind.PAULI_ZZ:
            return pauli_zz_feature_map(x, spec.reps)
    raise UsageError("amplitude encoding is prepared directly, not as a gate circuit")


def prepare_state(x: np.ndarray, spec: FeatureMapSpec) -> StateVector:
    """phi(x) as a state: the map applied to |0...0>."""
    if spec.kind == FeatureMapKind.AMPLITUDE:
        _check_dim(x, spec.expected_dim, "amplitude")
        return amplitude_encode(x, spec.n_qubits)
    return run_circuit(feature_map_circuit(x, spec), zero_state(spec.n_qubits))


def _check_dim(x: np.ndarray, expected: int, name: str) -> np.ndarray:
    values = np.asarray(x, dtype=np.float64)
    if values.shape != (expected,):
        raise UsageError(f"{name} map expects {expected} features, got shape {values.shape}")
    return values
