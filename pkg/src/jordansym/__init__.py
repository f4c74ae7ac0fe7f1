"""Symmetries of finite-dimensional C*-algebras.

A finite-dimensional C*-algebra is a direct sum of full matrix blocks
``M_{n_1} + ... + M_{n_k}``. This package works with its pure states and
transition probabilities, and with its Jordan, Kadison and Wigner
symmetries. It converts between the three kinds of symmetry and splits a
Jordan symmetry into multiplicative and anti-multiplicative parts. It also
recovers implementing (anti-)unitaries and classifies orientation on the
Bloch ball.
"""

from .algebra import (AlgebraElement, BlockAlgebra, add, adjoint_el, commutator, hermitian_basis,
                      is_positive, is_projection, jordan_product, multiply, scale)
from .bloch import (CornerChart, Orientation, OrientationReport, bloch_to_density,
                    corner_chart, corner_determinant, corner_projection, density_to_bloch,
                    induced_rotation, orientation_of, sphere_tp)
from .errors import *  # noqa: F401,F403
from .extraction import (ImplementingOperator, block_kind, extract_unitary, phase_distance,
                         verify_implementation)
from .states import (PureState, State, carrier, equivalent, state_eval, tp_all, tp_amplitude,
                     tp_carrier, tp_inf_witness, tp_norm)
from .symmetry import (CanonicalForm, CheckReport, JordanMap, KadisonView, WignerOracle,
                       apply_jordan, check_herstein_identities, herstein_defects,
                       is_jordan_symmetry, is_wigner, jordan_from_wigner, kadison_apply,
                       require_validated, wigner_from_jordan)
from .thomsen import (DefectSpace, Label, ThomsenDecomposition, classify_block, defect_spaces,
                      thomsen_decompose, verify_centrality)

__version__ = "0.1.0"
