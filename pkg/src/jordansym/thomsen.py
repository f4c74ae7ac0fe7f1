"""Splitting a Jordan symmetry into homomorphism and anti-homomorphism parts.

For a Jordan symmetry ``J`` let

    A1 = span{J(ab) - J(a)J(b)},    A2 = span{J(ab) - J(b)J(a)},

and let ``q1``, ``q2``, ``q3`` project onto the joint kernels of ``A1``,
``A2`` and ``A1 + A2``. Then ``p1 = 1 - q2``, ``p2 = 1 - q1``, ``p3 = q3``
are central, mutually orthogonal, sum to one, and ``a -> J(a) p1`` is a
homomorphism, ``a -> J(a) p2`` an anti-homomorphism and ``a -> J(a) p3`` both.

The defect ``(a, b) -> J(ab) - J(a)J(b)`` is bilinear in ``(a, b)`` for a
fixed linear ``J``, so the defects of hermitian-basis pairs span ``A1``
(and likewise ``A2``); no sampling is involved.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from . import matrixcore as mc
from .algebra import AlgebraElement, BlockAlgebra
from .errors import DecompositionInconsistent, IndexOutOfRange
from .symmetry import CheckReport, JordanMap, require_validated

TOL_PROJ = 1e-9
TOL_CENTRAL = 1e-8
TOL_MULT = 1e-8


class Label(str, Enum):
    HOM = "HOM"
    ANTI = "ANTI"
    BOTH = "BOTH"


@dataclass(frozen=True, eq=False)
class DefectSpace:
    """Orthonormal (Hilbert-Schmidt) basis of a defect span, as N x N matrices."""

    algebra: BlockAlgebra
    kind: str
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def kernel_projection(self) -> np.ndarray:
        return mc.kernel_projection(list(self.basis), self.algebra.total_dim)


@dataclass(frozen=True, eq=False)
class ThomsenDecomposition:
    p1: AlgebraElement
    p2: AlgebraElement
    p3: AlgebraElement
    labels: tuple
    q1: np.ndarray = field(repr=False, default=None)
    q2: np.ndarray = field(repr=False, default=None)
    q3: np.ndarray = field(repr=False, default=None)
    residuals: dict = field(default_factory=dict)

    @property
    def algebra(self) -> BlockAlgebra:
        return self.p1.algebra

    def block_indicators(self, which) -> list:
        p = {1: self.p1, 2: self.p2, 3: self.p3}[which]
        return [int(round(np.trace(b).real / b.shape[0])) for b in p.blocks]

    def to_json(self) -> dict:
        return {
            "p1_blocks": self.block_indicators(1),
            "p2_blocks": self.block_indicators(2),
            "p3_blocks": self.block_indicators(3),
            "labels": [lab.value for lab in self.labels],
            "residuals": {k: float(v) for k, v in sorted(self.residuals.items())},
        }


def _pair_defects(J: JordanMap, basis_order: Optional[Sequence[int]] = None):
    """Dense defects of all hermitian-basis pairs, shape (d*d, N, N) each."""
    A = J.algebra
    B = A.dense_basis
    if basis_order is not None:
        B = B[np.asarray(basis_order)]
    d, N = B.shape[0], A.total_dim
    M = J.matrix
    JB = np.einsum("lk,lnm->knm", M, A.dense_basis)
    if basis_order is not None:
        JB = JB[np.asarray(basis_order)]
    prod = np.einsum("inm,jmk->ijnk", B, B).reshape(d * d, N, N)
    # J applied to products through complex coordinates Tr(x b_l)
    coords = np.einsum("pnm,lmn->pl", prod, A.dense_basis)
    J_prod = np.einsum("pl,lnm->pnm", coords @ M.T, A.dense_basis)
    JJ = np.einsum("inm,jmk->ijnk", JB, JB)
    d1 = J_prod - JJ.reshape(d * d, N, N)
    d2 = J_prod - JJ.transpose(1, 0, 2, 3).reshape(d * d, N, N)
    return d1, d2


def _span(defects, rtol=mc.RANK_RTOL):
    n = defects.shape[-1]
    flat = defects.reshape(len(defects), n * n).T
    if flat.size == 0:
        return ()
    u, s, _ = np.linalg.svd(flat, full_matrices=False)
    # basis elements have unit norm, so the cutoff never drops below rtol
    keep = s > rtol * max(1.0, s[0] if s.size else 0.0)
    return tuple(u[:, i].reshape(n, n) for i in np.flatnonzero(keep))


def defect_spaces(J: JordanMap, basis_order=None):
    """Spans of the type-one and type-two defects of ``J``."""
    require_validated(J)
    d1, d2 = _pair_defects(J, basis_order)
    return (DefectSpace(J.algebra, "ONE", _span(d1)),
            DefectSpace(J.algebra, "TWO", _span(d2)))


def _worst(stack) -> float:
    return float(np.linalg.norm(stack, axis=(1, 2)).max(initial=0.0))


def _central_defect(A: BlockAlgebra, p: np.ndarray) -> float:
    """Distance of p from the nearest 0/1 combination of block identities."""
    worst = float(np.linalg.norm(p - A.from_dense(p).dense()))
    for i in range(A.num_blocks):
        s = A.block_slice(i)
        blk = p[s, s]
        t = round(np.trace(blk).real / A.dims[i])
        worst = max(worst, float(np.linalg.norm(blk - t * np.eye(A.dims[i]))))
    return worst


def thomsen_decompose(J: JordanMap, basis_order=None) -> ThomsenDecomposition:
    """Central projections splitting ``J`` into (anti-)homomorphism parts.

    Raises:
        NotValidated: if ``J`` is not a Jordan symmetry.
        DecompositionInconsistent: if the computed projections violate
            orthogonality, completeness, centrality or the multiplicativity
            conditions (numerical degeneracy).
    """
    require_validated(J)
    A = J.algebra
    N = A.total_dim
    d1, d2 = _pair_defects(J, basis_order)
    s1, s2 = _span(d1), _span(d2)
    q1 = mc.kernel_projection(list(s1), N)
    q2 = mc.kernel_projection(list(s2), N)
    q3 = mc.kernel_projection(list(s1) + list(s2), N)
    one = np.eye(N)
    P = {1: one - q2, 2: one - q1, 3: q3}

    res = {}
    res["orthogonality"] = max(np.linalg.norm(P[i] @ P[j]) for i, j in ((1, 2), (1, 3), (2, 3)))
    res["completeness"] = np.linalg.norm(P[1] + P[2] + P[3] - one)
    res["idempotence"] = max(np.linalg.norm(p @ p - p) for p in P.values())
    res["centrality"] = max(_central_defect(A, p) for p in P.values())
    res["hom_p1"] = _worst(d1 @ P[1])
    res["anti_p2"] = _worst(d2 @ P[2])
    res["both_p3"] = max(_worst(d1 @ P[3]), _worst(d2 @ P[3]))
    # p1 must not be anti-multiplicative unless it vanishes (and dually for p2)
    anti_gap_p1 = _worst(d2 @ P[1])
    hom_gap_p2 = _worst(d1 @ P[2])
    res = {k: float(v) for k, v in res.items()}

    problems = []
    if res["orthogonality"] >= TOL_PROJ or res["completeness"] >= TOL_PROJ:
        problems.append("projections are not an orthogonal partition of unity")
    if res["idempotence"] >= TOL_PROJ or res["centrality"] >= TOL_CENTRAL:
        problems.append("projections are not central")
    if max(res["hom_p1"], res["anti_p2"], res["both_p3"]) >= TOL_MULT:
        problems.append("multiplicativity conditions fail")
    if np.linalg.norm(P[1]) > TOL_PROJ and anti_gap_p1 < TOL_MULT:
        problems.append("nonzero p1 is also anti-multiplicative")
    if np.linalg.norm(P[2]) > TOL_PROJ and hom_gap_p2 < TOL_MULT:
        problems.append("nonzero p2 is also multiplicative")

    elements = {k: A.from_dense(v) for k, v in P.items()}
    labels = []
    for i in range(A.num_blocks):
        hits = [k for k in (1, 2, 3)
                if abs(np.trace(elements[k].blocks[i]).real - A.dims[i]) < 1e-6]
        if len(hits) != 1:
            problems.append(f"block {i} is not carried by exactly one projection")
            labels.append(None)
            continue
        labels.append({1: Label.HOM, 2: Label.ANTI, 3: Label.BOTH}[hits[0]])
    if problems:
        raise DecompositionInconsistent("; ".join(problems))

    return ThomsenDecomposition(elements[1], elements[2], elements[3], tuple(labels),
                                q1, q2, q3, res)


def classify_block(dec: ThomsenDecomposition, i: int) -> Label:
    if not 0 <= i < len(dec.labels):
        raise IndexOutOfRange(f"block index {i} out of range for {len(dec.labels)} blocks")
    return dec.labels[i]


def verify_centrality(dec: ThomsenDecomposition, algebra: BlockAlgebra = None,
                      tol_comm=TOL_PROJ, tol_central=TOL_CENTRAL) -> CheckReport:
    """Commutation with the hermitian basis and closeness to block-identity sums."""
    A = algebra or dec.algebra
    B = A.dense_basis
    worst, witness = 0.0, None
    central = 0.0
    for name, p in (("p1", dec.p1), ("p2", dec.p2), ("p3", dec.p3)):
        pd = p.dense()
        comm = np.linalg.norm(np.einsum("nm,kml->knl", pd, B) - np.einsum("knm,ml->knl", B, pd),
                              axis=(1, 2))
        k = int(np.argmax(comm))
        if comm[k] > worst:
            worst = float(comm[k])
            witness = {"projection": name, "basis_index": k, "commutator_norm": worst}
        central = max(central, _central_defect(A, pd))
    completeness = float((dec.p1 + dec.p2 + dec.p3 - A.identity()).norm())
    passed = worst < tol_comm and central < tol_central and completeness < tol_comm
    details = {"max_commutator": worst, "block_identity_distance": central,
               "completeness": completeness}
    return CheckReport(passed, max(worst, central, completeness),
                       None if passed else witness or details, details)
