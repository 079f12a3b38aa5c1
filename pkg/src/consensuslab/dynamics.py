"""The three averaging update rules and the augmented first-order form.

DeGroot replaces each state with the weighted average of current neighbor
states. The accelerated variant mixes that average with the raw previous
states (weight beta). The memory-of-local-averages rule (MLA) averages
both the current and the previous states first and mixes the two averages
(weight gamma), so each agent only needs to remember its own previous
local average.

The two-vector step functions are the production path. The explicit
2n-by-2n block matrix is built for verification and spectral cross-checks
only; iterating it agrees with the step functions to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadParameter, DimensionMismatch
from .net import WeightedAdjacency


class ModelKind(Enum):
    DEGROOT = "degroot"
    ACCELERATED = "accelerated"
    MLA = "mla"


@dataclass(frozen=True)
class ModelParams:
    """A model choice plus its scalar parameter.

    The parameter is beta for the accelerated model and gamma for MLA;
    DeGroot ignores it. No range is enforced here: whether a parameter
    value converges is decided by the analysis operations.
    """

    kind: ModelKind
    param: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.param):
            raise BadParameter(f"model parameter must be finite, got {self.param!r}")

    @classmethod
    def degroot(cls) -> "ModelParams":
        return cls(ModelKind.DEGROOT)

    @classmethod
    def accelerated(cls, beta: float) -> "ModelParams":
        return cls(ModelKind.ACCELERATED, beta)

    @classmethod
    def mla(cls, gamma: float) -> "ModelParams":
        return cls(ModelKind.MLA, gamma)


@dataclass(frozen=True, eq=False)
class AugmentedState:
    """Stacked state [x(k); x(k-1)] with its step counter."""

    current: np.ndarray
    previous: np.ndarray
    k: int = 0


@dataclass(frozen=True, eq=False)
class AugmentedMatrix:
    """The 2n-by-2n block iteration matrix [[gamma A, (1-gamma) A], [I, 0]]."""

    matrix: np.ndarray
    gamma: float
    n: int


def _check_vector(A: WeightedAdjacency, x: np.ndarray, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (A.n,):
        raise DimensionMismatch(
            f"{name} has shape {x.shape}, expected ({A.n},)"
        )
    return x


def step_degroot(A: WeightedAdjacency, x) -> np.ndarray:
    """One DeGroot update: the weighted average A x of current states."""
    x = _check_vector(A, x, "x")
    return A.weights @ x


def step_accelerated(A: WeightedAdjacency, beta: float, x, x_prev) -> np.ndarray:
    """One accelerated-averaging update: beta * A x + (1 - beta) * x_prev."""
    x = _check_vector(A, x, "x")
    x_prev = _check_vector(A, x_prev, "x_prev")
    return beta * (A.weights @ x) + (1.0 - beta) * x_prev


def step_mla(A: WeightedAdjacency, gamma: float, x, x_prev) -> np.ndarray:
    """One MLA update: gamma * A x + (1 - gamma) * A x_prev.

    gamma = 1 collapses to the DeGroot update.
    """
    x = _check_vector(A, x, "x")
    x_prev = _check_vector(A, x_prev, "x_prev")
    return gamma * (A.weights @ x) + (1.0 - gamma) * (A.weights @ x_prev)


def step_model(A: WeightedAdjacency, model: ModelParams, x, x_prev) -> np.ndarray:
    """Dispatch one update of the chosen model on (x, x_prev)."""
    if model.kind is ModelKind.DEGROOT:
        return step_degroot(A, x)
    if model.kind is ModelKind.ACCELERATED:
        return step_accelerated(A, model.param, x, x_prev)
    return step_mla(A, model.param, x, x_prev)


def build_augmented(A: WeightedAdjacency, gamma: float) -> AugmentedMatrix:
    """Assemble the explicit block matrix driving the stacked MLA state.

    Multiplying [x(k); x(k-1)] by it equals one step_mla followed by the
    shift of x(k) into the memory slot. Row sums stay 1 for any gamma.
    """
    n = A.n
    W = A.weights
    M = np.zeros((2 * n, 2 * n))
    M[:n, :n] = gamma * W
    M[:n, n:] = (1.0 - gamma) * W
    M[n:, :n] = np.eye(n)
    M.setflags(write=False)
    return AugmentedMatrix(matrix=M, gamma=gamma, n=n)
