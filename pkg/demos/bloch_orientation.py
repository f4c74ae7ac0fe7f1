"""Qubit geometry: rotations induced by symmetries of M_2 and their orientation.

Run with ``python3 demos/bloch_orientation.py``.
"""

import numpy as np

from jordansym import (BlockAlgebra, CanonicalForm, bloch_to_density, density_to_bloch,
                       induced_rotation, orientation_of)

A = BlockAlgebra((2,))
v = np.array([0.3, -0.4, 0.5])
rho = bloch_to_density(v)
print("density\n", np.round(rho, 3))
print("back to ball", density_to_bloch(rho))

theta = np.pi / 3
u = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
for anti in (False, True):
    J = CanonicalForm(A, (0,), (u,), (anti,)).jordan()
    R = induced_rotation(J)
    print("transpose" if anti else "conjugation", "det", round(np.linalg.det(R), 12))
    print(np.round(R, 6))

B = BlockAlgebra((2, 3))
mixed = CanonicalForm(B, (0, 1), (np.eye(2), np.eye(3)), (False, True)).jordan()
report = orientation_of(mixed)
print("verdict", report.verdict.value, "labels", report.to_json()["block_labels"])
