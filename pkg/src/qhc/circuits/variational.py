"""Trainable variational form: RY layers alternating with linear CNOT cascades."""

from __future__ import annotations

import numpy as np

from qhc.models.specs import VariationalFormSpec
from qhc.simulator import gates
from qhc.simulator.statevector import Circuit
from qhc.utils.exceptions import UsageError


def variational_form(
    theta: np.ndarray,
    n_qubits: int,
    rotation_layers: int = 2,
    final_entangler: bool = False,
) -> Circuit:
    """Rotation layer, then (entangler, rotation layer) for each further layer.

    Layer l applies RY(theta[l * n_qubits + q]) to qubit q. With ``final_entangler``
    one more cascade follows the last rotation layer.
    """
    params = np.asarray(theta, dtype=np.float64)
    expected = n_qubits * rotation_layers
    if params.shape != (expected,):
        raise UsageError(
            f"variational form on {n_qubits} qubits x {rotation_layers} layers takes "
            f"{expected} parameters, got shape {params.shape}"
        )
    circuit = Circuit(n_qubits)
    for layer in range(rotation_layers):
        if layer > 0:
            circuit.extend(entangler(n_qubits))
        circuit.extend(gates.ry(q, params[layer * n_qubits + q]) for q in range(n_qubits))
    if final_entangler:
        circuit.extend(entangler(n_qubits))
    return circuit


def build_variational_form(theta: np.ndarray, spec: VariationalFormSpec) -> Circuit:
    return variational_form(theta, spec.n_qubits, spec.rotation_layers, spec.final_entangler)


def entangler(n_qubits: int) -> list[gates.Gate]:
    """Linear cascade CNOT(q, q+1), q = 0..n-2."""
    return [gates.cnot(q, q + 1) for q in range(n_qubits - 1)]
