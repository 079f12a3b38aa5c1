"""Weighted adjacency matrices: validation, structure checks, generators, file I/O.

All models in this package run on non-negative row-stochastic weight
matrices: entry (i, j) is the weight agent i assigns to agent j's state.
Whether an update rule settles, and how fast, is decided by structural
properties of the weight pattern (symmetry, irreducibility, primitivity)
together with its spectrum, so those checks live here next to the
constructors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParameter,
    NegativeWeight,
    NotSquare,
    ParseError,
    RowSumViolation,
)

ROW_SUM_TOL = 1e-12
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WeightedAdjacency:
    """A validated n-by-n non-negative row-stochastic weight matrix."""

    n: int
    weights: np.ndarray


@dataclass(frozen=True)
class StructureReport:
    """Structural flags of a weight pattern.

    witness_k is the smallest power with an entrywise-positive pattern;
    it is present exactly when the matrix is primitive.
    """

    symmetric: bool
    irreducible: bool
    primitive: bool
    witness_k: int | None = None


def validate(weights) -> WeightedAdjacency:
    """Wrap a raw matrix after checking non-negativity and row sums.

    Raises NotSquare, BadParameter (n < 2), NegativeWeight, or
    RowSumViolation. Row sums must be 1 within 1e-12.
    """
    W = np.array(weights, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {W.shape}")
    n = W.shape[0]
    if n < 2:
        raise BadParameter(f"need at least 2 agents, got n={n}")
    neg = np.argwhere(W < 0.0)
    if neg.size:
        i, j = map(int, neg[0])
        raise NegativeWeight(i, j, float(W[i, j]))
    sums = W.sum(axis=1)
    bad = np.nonzero(np.abs(sums - 1.0) > ROW_SUM_TOL)[0]
    if bad.size:
        i = int(bad[0])
        raise RowSumViolation(i, float(sums[i]))
    W.setflags(write=False)
    return WeightedAdjacency(n=n, weights=W)


def _bool_power_all_positive(pattern: np.ndarray, k_max: int) -> int | None:
    """Smallest k <= k_max with an all-positive boolean pattern power, else None."""
    P = pattern.copy()
    for k in range(1, k_max + 1):
        if P.all():
            return k
        P = (P.astype(np.int64) @ pattern.astype(np.int64)) > 0
    return None


def analyze_structure(A: WeightedAdjacency) -> StructureReport:
    """Report symmetry, irreducibility, and primitivity of the weight pattern.

    Irreducibility uses the power-sum test: sum of pattern powers k = 0..n-1
    entrywise positive. Primitivity searches for an all-positive pattern
    power up to the sharp bound (n-1)^2 + 1. Both run on the boolean
    sparsity pattern (entry > 0), never on floating values, so repeated
    multiplication cannot underflow.
    """
    W = A.weights
    n = A.n
    symmetric = bool(np.max(np.abs(W - W.T)) <= SYMMETRY_TOL)

    pattern = W > 0.0
    reach = np.eye(n, dtype=bool)
    P = np.eye(n, dtype=bool)
    for _ in range(1, n):
        P = (P.astype(np.int64) @ pattern.astype(np.int64)) > 0
        reach |= P
    irreducible = bool(reach.all())

    witness_k = None
    if irreducible:
        witness_k = _bool_power_all_positive(pattern, (n - 1) ** 2 + 1)
    primitive = witness_k is not None
    return StructureReport(
        symmetric=symmetric,
        irreducible=irreducible,
        primitive=primitive,
        witness_k=witness_k,
    )


def make_ring(n: int, self_loop: float = 0.0) -> WeightedAdjacency:
    """Circulant ring of n agents, each listening to its two neighbors.

    Every agent keeps `self_loop` weight on itself and splits the rest
    evenly between the two ring neighbors. self_loop = 0 gives the pure
    periodic ring (bipartite for even n, hence never primitive there).
    """
    if n < 3:
        raise BadParameter(f"ring needs n >= 3, got {n}")
    if not 0.0 <= self_loop < 1.0:
        raise BadParameter(f"self_loop must lie in [0, 1), got {self_loop!r}")
    off = (1.0 - self_loop) / 2.0
    W = np.zeros((n, n))
    for i in range(n):
        W[i, i] = self_loop
        W[i, (i + 1) % n] += off
        W[i, (i - 1) % n] += off
    return validate(W)


def write_matrix(A: WeightedAdjacency, path) -> None:
    """Write the plain-text matrix format: first line n, then n rows.

    Values are printed with 17 significant digits so a read-back is
    value-exact.
    """
    with open(path, "w") as fh:
        fh.write(f"{A.n}\n")
        for row in A.weights:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def read_matrix(path) -> WeightedAdjacency:
    """Read the plain-text matrix format and validate the result.

    Raises ParseError (with the 1-based file line) on malformed input,
    then the validate() errors apply to the parsed values.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    # ignore trailing blank lines only; blank lines inside the body are errors
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError(1, "empty file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(1, f"expected the matrix size, got {lines[0]!r}") from None
    if n < 1:
        raise ParseError(1, f"matrix size must be positive, got {n}")
    if len(lines) - 1 != n:
        raise ParseError(
            len(lines), f"expected {n} rows, found {len(lines) - 1}"
        )
    rows = []
    for r in range(n):
        lineno = r + 2
        parts = lines[r + 1].split()
        if len(parts) != n:
            raise ParseError(
                lineno, f"row {r} has {len(parts)} values, expected {n}"
            )
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise ParseError(lineno, f"row {r} has a non-numeric value") from None
    return validate(rows)
