"""A short tour: states, a random symmetry, and its three views.

Run with ``python3 demos/tour.py``.
"""

import numpy as np

from jordansym import (BlockAlgebra, KadisonView, is_jordan_symmetry, jordan_from_wigner,
                       kadison_apply, tp_all, wigner_from_jordan)
from jordansym.rand import random_jordan, random_pure_state, random_state

rng = np.random.default_rng(7)
A = BlockAlgebra((3, 2, 1))
print("algebra dims", A.dims, "real dimension", A.real_dim)

# Transition probability, three ways
w1 = random_pure_state(A, rng, block=0)
w2 = random_pure_state(A, rng, block=0)
print("tp formulas", tp_all(w1, w2))

# A random Jordan symmetry passes the structural check
J = random_jordan(A, rng)
print("jordan check passed:", is_jordan_symmetry(J).passed)

# Its dual acts on states and keeps them normalised
rho = kadison_apply(KadisonView(J), random_state(A, rng))
print("trace of image state", sum(np.trace(r).real for r in rho.rho))

# The pure-state map preserves transition probabilities
W = wigner_from_jordan(J)
before, after = tp_all(w1, w2)["amplitude"], tp_all(W(w1), W(w2))["amplitude"]
print(f"amplitude before {before:.12f} after {after:.12f}")

# and the Jordan map can be rebuilt from the pure-state map alone
J2 = jordan_from_wigner(W)
print("reconstruction error", np.linalg.norm(J.matrix - J2.matrix))
