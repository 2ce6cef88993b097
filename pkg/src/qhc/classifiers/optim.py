"""Adam optimiser shared by the VQC and the autoencoder."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from qhc.utils.exceptions import UsageError


class AdamSettings(Protocol):
    """Anything carrying Adam hyperparameters (TrainConfig, AeTrainConfig)."""

    learning_rate: float
    adam_beta1: float
    adam_beta2: float
    adam_eps: float


@dataclass(frozen=True, eq=False)
class AdamState:
    """First and second moment estimates plus the step counter."""

    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @classmethod
    def zeros(cls, shape: int | tuple[int, ...]) -> AdamState:
        return cls(m=np.zeros(shape), v=np.zeros(shape), t=0)


def adam_step(
    theta: np.ndarray,
    grad: np.ndarray,
    state: AdamState,
    config: AdamSettings,
) -> tuple[np.ndarray, AdamState]:
    """One bias-corrected Adam update. Inputs are not modified.

    Raises:
        UsageError: If parameter, gradient, and state shapes disagree.
    """
    theta = np.asarray(theta, dtype=np.float64)
    grad = np.asarray(grad, dtype=np.float64)
    if theta.shape != grad.shape or state.m.shape != theta.shape:
        raise UsageError(
            f"Adam shapes disagree: theta {theta.shape}, grad {grad.shape}, "
            f"state {state.m.shape}"
        )
    b1, b2 = config.adam_beta1, config.adam_beta2
    t = state.t + 1
    m = b1 * state.m + (1.0 - b1) * grad
    v = b2 * state.v + (1.0 - b2) * grad**2
    m_hat = m / (1.0 - b1**t)
    v_hat = v / (1.0 - b2**t)
    step = config.learning_rate * m_hat / (np.sqrt(v_hat) + config.adam_eps)
    return theta - step, AdamState(m=m, v=v, t=t)
