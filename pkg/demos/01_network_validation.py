"""Build weight matrices, validate them, and inspect their structure.

Everything downstream (convergence, rates, optimal parameters) depends on
three structural facts about the network: symmetry, irreducibility
(connectedness), and primitivity (aperiodicity). This script shows how to
check them and how matrices round-trip through the plain-text format.
"""

import tempfile

import numpy as np

from consensuslab import (
    RowSumViolation,
    analyze_structure,
    make_ring,
    read_matrix,
    validate,
    write_matrix,
)

# A pure 4-agent ring: each agent averages its two neighbors. Even rings
# are bipartite, so this network is connected but periodic.
ring = make_ring(4, 0.0)
print("pure 4-ring weights:")
print(ring.weights)
print(analyze_structure(ring))

# Adding a small self-loop breaks the periodicity: the pattern power
# A^2 is already entrywise positive.
loops = make_ring(4, 0.1)
print("\nwith self-loop 0.1:", analyze_structure(loops))

# Any non-negative matrix with unit row sums validates; bad rows are
# rejected with the offending row and its sum.
try:
    validate([[0.5, 0.6], [0.5, 0.5]])
except RowSumViolation as e:
    print("\nrejected as expected:", e)

# Matrices round-trip exactly through the text format.
with tempfile.NamedTemporaryFile(mode="w", suffix=".txt") as fh:
    write_matrix(loops, fh.name)
    back = read_matrix(fh.name)
    print("\nround-trip exact:", np.array_equal(loops.weights, back.weights))
