"""Feature maps and variational forms."""

from qhc.circuits.encoders import (
    amplitude_encode,
    feature_map_circuit,
    pauli_zz_feature_map,
    prepare_state,
    u2_reuploading_map,
)
from qhc.circuits.variational import build_variational_form, variational_form

__all__ = [
    "amplitude_encode",
    "build_variational_form",
    "feature_map_circuit",
    "pauli_zz_feature_map",
    "prepare_state",
    "u2_reuploading_map",
    "variational_form",
]
