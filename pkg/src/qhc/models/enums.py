"""Enumerations for qhc domain models."""

from enum import StrEnum


class GateKind(StrEnum):
    """Gate set supported by the statevector simulator."""

    RY = "RY"
    RZ = "RZ"
    H = "H"
    X = "X"
    U3 = "U3"
    U2 = "U2"
    CNOT = "CNOT"


class FeatureMapKind(StrEnum):
    """Data-embedding circuits."""

    AMPLITUDE = "amplitude"
    U2_REUPLOADING = "u2_reuploading"
    PAULI_ZZ = "pauli_zz"


class KernelKind(StrEnum):
    """Kernel families usable by the SVM."""

    QUANTUM_FIDELITY = "quantum_fidelity"
    RBF = "rbf"
    LINEAR = "linear"


class ReduceMode(StrEnum):
    """Feature-reduction front ends."""

    AE = "ae"
    AUC = "auc"


class ModelKind(StrEnum):
    """Trainable classifier families."""

    QSVM = "qsvm"
    SVM = "svm"
    VQC = "vqc"
