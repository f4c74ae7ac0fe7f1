"""Central decomposition of a mixed symmetry and per-block implementers.

Run with ``python3 demos/decompose_and_extract.py``.
"""

import numpy as np

from jordansym import (BlockAlgebra, ImplementingOperator, extract_unitary, phase_distance,
                       thomsen_decompose)
from jordansym.rand import random_canonical_form

rng = np.random.default_rng(11)
A = BlockAlgebra((3, 3, 2, 1))
form = random_canonical_form(A, rng, transpose=[False, True, True, False])
J = form.jordan()

dec = thomsen_decompose(J)
print("labels", [label.value for label in dec.labels])
for key, value in dec.to_json().items():
    if key.endswith("_blocks"):
        print(key, value)

for i in range(A.num_blocks):
    op = extract_unitary(J, i)
    truth = ImplementingOperator(i, form.unitaries[i], form.antiunitary[i])
    kind = "antiunitary" if op.antiunitary else "unitary"
    print(f"block {i}: {kind}, distance to generator {phase_distance(op, truth):.2e}")
