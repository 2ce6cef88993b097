"""Gate definitions and their 2x2 unitaries.

Angles are in radians. ``U3(theta, phi, lam)`` follows the matrix

    [[cos(theta/2),            -e^{i lam} sin(theta/2)],
     [e^{i phi} sin(theta/2),   e^{i(phi + lam)} cos(theta/2)]]

and ``U2(phi, lam)`` is ``U3(pi/2, phi, lam)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qhc.models.enums import GateKind
from qhc.utils.exceptions import UsageError

_PARAM_COUNTS = {
    GateKind.RY: 1,
    GateKind.RZ: 1,
    GateKind.H: 0,
    GateKind.X: 0,
    GateKind.U3: 3,
    GateKind.U2: 2,
    GateKind.CNOT: 0,
}

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class Gate:
    """One gate: kind, angle parameters, and target qubits ([control, target] for CNOT)."""

    kind: GateKind
    params: tuple[float, ...] = ()
    targets: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        expected = _PARAM_COUNTS[self.kind]
        if len(self.params) != expected:
            raise UsageError(f"{self.kind} takes {expected} parameters, got {len(self.params)}")
        n_targets = 2 if self.kind == GateKind.CNOT else 1
        if len(self.targets) != n_targets:
            raise UsageError(f"{self.kind} acts on {n_targets} qubit(s), got {self.targets}")
        if any(q < 0 for q in self.targets):
            raise UsageError(f"negative qubit index in {self.targets}")
        if self.kind == GateKind.CNOT and self.targets[0] == self.targets[1]:
            raise UsageError(f"CNOT control and target must differ, got {self.targets}")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind == GateKind.CNOT

    def matrix(self) -> np.ndarray:
        """2x2 unitary of a single-qubit gate."""
        match self.kind:
            case GateKind.RY:
                return u3_matrix(self.params[0], 0.0, 0.0)
            case GateKind.RZ:
                half = self.params[0] / 2
                return np.array(
                    [[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=np.complex128
                )
            case GateKind.H:
                return _H
            case GateKind.X:
                return _X
            case GateKind.U3:
                return u3_matrix(*self.params)
            case GateKind.U2:
                return u3_matrix(math.pi / 2, *self.params)
        raise UsageError(f"{self.kind} has no single-qubit matrix")

    def inverse(self) -> Gate:
        """The gate whose unitary is this gate's conjugate transpose."""
        match self.kind:
            case GateKind.RY | GateKind.RZ:
                return Gate(self.kind, (-self.params[0],), self.targets)
            case GateKind.U3:
                theta, phi, lam = self.params
                return Gate(GateKind.U3, (-theta, -lam, -phi), self.targets)
            case GateKind.U2:
                phi, lam = self.params
                return Gate(GateKind.U3, (-math.pi / 2, -lam, -phi), self.targets)
        return self


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=np.complex128,
    )


def ry(qubit: int, theta: float) -> Gate:
    return Gate(GateKind.RY, (float(theta),), (qubit,))


def rz(qubit: int, theta: float) -> Gate:
    return Gate(GateKind.RZ, (float(theta),), (qubit,))


def h(qubit: int) -> Gate:
    return Gate(GateKind.H, (), (qubit,))


def x(qubit: int) -> Gate:
    return Gate(GateKind.X, (), (qubit,))


def u3(qubit: int, theta: float, phi: float, lam: float) -> Gate:
    return Gate(GateKind.U3, (float(theta), float(phi), float(lam)), (qubit,))


def u2(qubit: int, phi: float, lam: float) -> Gate:
    return Gate(GateKind.U2, (float(phi), float(lam)), (qubit,))


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (), (control, target))
