"""Exact statevector simulator."""

from qhc.simulator.gates import Gate
from qhc.simulator.statevector import (
    Circuit,
    StateVector,
    apply_gate,
    circuit_unitary,
    inner_product,
    prob_qubit_one,
    run_circuit,
    zero_state,
)

__all__ = [
    "Circuit",
    "Gate",
    "StateVector",
    "apply_gate",
    "circuit_unitary",
    "inner_product",
    "prob_qubit_one",
    "run_circuit",
    "zero_state",
]
