"""Circuit and kernel specifications shared by config, training, and persistence."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from qhc.models.enums import FeatureMapKind, KernelKind

MAX_QUBITS = 10

# Fixed layouts of the re-uploading and Pauli feature maps
U2_REUPLOADING_QUBITS = 8
U2_REUPLOADING_DIM = 16
PAULI_ZZ_QUBITS = 4
PAULI_ZZ_DIM = 4


class StrictModel(BaseModel):
    """Immutable model that rejects unknown keys."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class FeatureMapSpec(StrictModel):
    """Which feature map phi(x) embeds a data vector, and on how many qubits."""

    kind: FeatureMapKind
    n_qubits: int = Field(ge=1, le=MAX_QUBITS)
    reps: int = Field(default=2, ge=1)
    # Amplitude encoding only: features consumed, zero-padded up to 2**n_qubits
    dim: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_layout(self) -> FeatureMapSpec:
        if self.kind == FeatureMapKind.AMPLITUDE:
            if self.dim is not None and self.dim > 2**self.n_qubits:
                msg = f"amplitude encoding on {self.n_qubits} qubits holds at most "
                msg += f"{2**self.n_qubits} features, got dim={self.dim}"
                raise ValueError(msg)
        elif self.dim is not None:
            raise ValueError(f"dim is only configurable for amplitude encoding, not {self.kind}")
        if self.kind == FeatureMapKind.U2_REUPLOADING and self.n_qubits != U2_REUPLOADING_QUBITS:
            raise ValueError(f"u2_reuploading uses {U2_REUPLOADING_QUBITS} qubits")
        if self.kind == FeatureMapKind.PAULI_ZZ and self.n_qubits != PAULI_ZZ_QUBITS:
            raise ValueError(f"pauli_zz uses {PAULI_ZZ_QUBITS} qubits")
        return self

    @property
    def expected_dim(self) -> int:
        """Number of features consumed per invocation."""
        if self.kind == FeatureMapKind.AMPLITUDE:
            return self.dim if self.dim is not None else 2**self.n_qubits
        if self.kind == FeatureMapKind.U2_REUPLOADING:
            return U2_REUPLOADING_DIM
        return PAULI_ZZ_DIM

    @classmethod
    def amplitude(cls, n_qubits: int, dim: int | None = None) -> FeatureMapSpec:
        return cls(kind=FeatureMapKind.AMPLITUDE, n_qubits=n_qubits, dim=dim)

    @classmethod
    def u2_reuploading(cls) -> FeatureMapSpec:
        return cls(kind=FeatureMapKind.U2_REUPLOADING, n_qubits=U2_REUPLOADING_QUBITS)

    @classmethod
    def pauli_zz(cls, reps: int = 2) -> FeatureMapSpec:
        return cls(kind=FeatureMapKind.PAULI_ZZ, n_qubits=PAULI_ZZ_QUBITS, reps=reps)


class VariationalFormSpec(StrictModel):
    """RY rotation layers alternating with linear CNOT cascades."""

    n_qubits: int = Field(default=4, ge=1, le=MAX_QUBITS)
    rotation_layers: int = Field(default=2, ge=1)
    final_entangler: bool = False

    @property
    def params_per_instance(self) -> int:
        return self.n_qubits * self.rotation_layers


class KernelSpec(StrictModel):
    """Kernel used to build Gram matrices for the SVM."""

    kind: KernelKind = KernelKind.QUANTUM_FIDELITY
    feature_map: FeatureMapSpec | None = None
    gamma: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _check_kind(self) -> KernelSpec:
        if self.kind == KernelKind.QUANTUM_FIDELITY and self.feature_map is None:
            raise ValueError("quantum_fidelity kernel requires a feature_map")
        if self.kind != KernelKind.QUANTUM_FIDELITY and self.feature_map is not None:
            raise ValueError(f"{self.kind} kernel takes no feature_map")
        if self.kind != KernelKind.RBF and self.gamma is not None:
            raise ValueError("gamma applies to the rbf kernel only")
        return self

    @property
    def expected_dim(self) -> int | None:
        """Feature count the kernel requires, or None when any width works."""
        if self.feature_map is not None:
            return self.feature_map.expected_dim
        return None

    def gamma_for(self, n_features: int) -> float:
        """RBF width, defaulting to 1/d."""
        if self.gamma is not None:
            return self.gamma
        return 1.0 / max(n_features, 1)

    @classmethod
    def quantum(cls, feature_map: FeatureMapSpec) -> KernelSpec:
        return cls(kind=KernelKind.QUANTUM_FIDELITY, feature_map=feature_map)

    @classmethod
    def rbf(cls, gamma: float | None = None) -> KernelSpec:
        return cls(kind=KernelKind.RBF, gamma=gamma)

    @classmethod
    def linear(cls) -> KernelSpec:
        return cls(kind=KernelKind.LINEAR)
