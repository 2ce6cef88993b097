"""CLI kernel-dump command: export a Gram matrix for inspection."""

from __future__ import annotations

import logging
from pathlib import Path

import typer
from pydantic import ValidationError

from qhc.classifiers.kernels import kernel_matrix
from qhc.cli.console import abort, console
from qhc.cli.context import state
from qhc.data.csv_io import load_csv
from qhc.data.scaling import apply_minmax, fit_minmax
from qhc.models.enums import FeatureMapKind, KernelKind
from qhc.models.specs import FeatureMapSpec, KernelSpec
from qhc.pipeline.persistence import write_matrix_csv
from qhc.utils.exceptions import ConfigError, QhcError

logger = logging.getLogger(__name__)

kernel_dump_app = typer.Typer(name="kernel-dump", help="Write a kernel Gram matrix as CSV")


@kernel_dump_app.callback(invoke_without_command=True)
def kernel_dump(
    data: Path = typer.Option(..., "--data", "-d", help="Input CSV"),
    out: Path = typer.Option(..., "--out", "-o", help="Output CSV (n x n, no header)"),
    kernel: KernelKind | None = typer.Option(None, "--kernel", help="[default: config kernel]"),
    feature_map: FeatureMapKind | None = typer.Option(None, "--map", help="Quantum feature map"),
    qubits: int | None = typer.Option(None, "--qubits", help="Qubits for amplitude encoding"),
    gamma: float | None = typer.Option(None, "--gamma", help="RBF width"),
    limit: int = typer.Option(200, "--limit", help="Use the first N rows"),
) -> None:
    """Min-max scale the first rows of a file and write their Gram matrix."""
    config = state.config
    try:
        spec = _resolve_spec(config.kernel, kernel, feature_map, qubits, gamma)
        dataset = load_csv(data, config.data.label_column)
        rows = dataset.subset(range(min(limit, dataset.n_samples)))
        scaled = apply_minmax(rows, fit_minmax(rows))
        matrix = kernel_matrix(scaled.features, spec, n_jobs=config.n_jobs)
        write_matrix_csv(matrix.values, out)
    except QhcError as e:
        abort(e, "Kernel dump failed")

    console.print(f"  Rows:            {matrix.n}")
    console.print(f"  Min eigenvalue:  [metric]{matrix.min_eigenvalue():.3e}[/metric]")
    console.print(f"[success]Wrote {matrix.n}x{matrix.n} {spec.kind} matrix to {out}[/success]")


def _resolve_spec(
    base: KernelSpec,
    kernel: KernelKind | None,
    feature_map: FeatureMapKind | None,
    qubits: int | None,
    gamma: float | None,
) -> KernelSpec:
    """Flag values layered over the configured kernel."""
    kind = kernel or (KernelKind.QUANTUM_FIDELITY if feature_map or qubits else base.kind)
    try:
        if kind == KernelKind.QUANTUM_FIDELITY:
            fm = base.feature_map
            if feature_map == FeatureMapKind.U2_REUPLOADING:
                fm = FeatureMapSpec.u2_reuploading()
            elif feature_map == FeatureMapKind.PAULI_ZZ:
                fm = FeatureMapSpec.pauli_zz()
            elif feature_map == FeatureMapKind.AMPLITUDE or qubits is not None or fm is None:
                fm = FeatureMapSpec.amplitude(qubits or 4)
            return KernelSpec.quantum(fm)
        if kind == KernelKind.RBF:
            return KernelSpec.rbf(gamma if gamma is not None else base.gamma)
        return KernelSpec.linear()
    except ValidationError as e:
        raise ConfigError(f"Invalid kernel flags: {e}") from e
