"""Bloch-ball geometry of 2 x 2 corners and orientation of symmetries.

Two distinct equivalent pure states span a rank-2 projection ``f`` inside
their block; the corner ``f A f`` is a copy of ``M_2(C)`` and its states form
a Bloch ball. A symmetry maps corners to corners, and after fixing charts on
both ends it induces a map in ``O(3)``. The sign of its determinant does not
depend on the charts: +1 where the symmetry acts as an automorphism, -1 where
it acts as an anti-automorphism.

Bloch vectors and rotations are plain numpy arrays of shape ``(3,)`` and
``(3, 3)``.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Union

import numpy as np

from . import matrixcore as mc
from .algebra import AlgebraElement, BlockAlgebra
from .errors import (EqualRays, InequivalentStates, NotDensity, NotJordan, NotOnSphere, NotRank2,
                     OutOfBall)
from .states import PureState, equivalent, tp_amplitude
from .symmetry import JordanMap, kadison_apply, KadisonView, require_validated, wigner_from_jordan
from .thomsen import Label, thomsen_decompose

TOL_BALL = 1e-12
TOL_SPHERE = 1e-9
TOL_DENSITY = 1e-10
TOL_ORTHOGONAL = 1e-9


class Orientation(str, Enum):
    PRESERVING = "PRESERVING"
    REVERSING = "REVERSING"
    MIXED = "MIXED"
    TRIVIAL = "TRIVIAL"


def bloch_to_density(v) -> np.ndarray:
    """``(x, y, z) -> [[1 + z, x - iy], [x + iy, 1 - z]] / 2``."""
    x, y, z = np.asarray(v, dtype=float)
    if np.linalg.norm([x, y, z]) > 1 + TOL_BALL:
        raise OutOfBall(f"Bloch vector of norm {np.linalg.norm([x, y, z])} lies outside the ball")
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


def density_to_bloch(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise NotDensity(f"expected a 2x2 matrix, got {rho.shape}")
    if (mc.hermiticity_defect(rho) > TOL_DENSITY or abs(np.trace(rho) - 1) > TOL_DENSITY
            or np.linalg.eigvalsh(rho)[0] < -TOL_DENSITY):
        raise NotDensity("matrix is not a density matrix")
    return np.array([2 * rho[1, 0].real, 2 * rho[1, 0].imag, (rho[0, 0] - rho[1, 1]).real])


def sphere_tp(x, y) -> float:
    """Transition probability ``(1 + <x, y>) / 2`` of two pure Bloch vectors."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    for v in (x, y):
        if abs(np.linalg.norm(v) - 1) > TOL_SPHERE:
            raise NotOnSphere(f"vector of norm {np.linalg.norm(v)} is not on the unit sphere")
    return float(0.5 * (1 + x @ y))


def corner_projection(omega: PureState, omega2: PureState) -> AlgebraElement:
    """Rank-2 projection onto the span of two distinct equivalent pure states."""
    if not equivalent(omega, omega2):
        raise InequivalentStates("states live in different blocks")
    if tp_amplitude(omega, omega2) >= 1 - 1e-9:
        raise EqualRays("states coincide up to phase")
    basis = mc.orthonormal_span(np.column_stack([omega.psi, omega2.psi]))
    return omega.algebra.embed(omega.block, basis @ mc.adjoint(basis))


@dataclass(frozen=True, eq=False)
class CornerChart:
    """Orthonormal basis ``(v1, v2)`` of a corner, as columns of ``basis``.

    The chart identifies ``M_2(C)`` with the corner by ``a -> B a B^*``.
    """

    algebra: BlockAlgebra
    block: int
    basis: np.ndarray

    def embed(self, a) -> AlgebraElement:
        return self.algebra.embed(self.block, self.basis @ a @ mc.adjoint(self.basis))

    def compress(self, x: AlgebraElement) -> np.ndarray:
        return mc.adjoint(self.basis) @ x.blocks[self.block] @ self.basis


def corner_chart(f: AlgebraElement, block: int, first=None, second=None) -> CornerChart:
    """Chart of the corner cut out by the rank-2 projection ``f`` in ``block``.

    The first chart vector is ``first`` normalized (default: the leading
    eigenvector of ``f``); the second is the Gram-Schmidt complement of
    ``second`` (default: any unit vector completing the range).

    Raises:
        NotRank2: if ``f`` is not a rank-2 projection supported in ``block``.
    """
    A = f.algebra
    A.check_block(block)
    fb = f.blocks[block]
    others = sum(np.linalg.norm(b) for i, b in enumerate(f.blocks) if i != block)
    w, v = mc.hermitian_eig(fb)
    ones = np.sum(np.abs(w - 1) < 1e-8)
    zeros = np.sum(np.abs(w) < 1e-8)
    if ones != 2 or zeros != len(w) - 2 or others > 1e-8:
        raise NotRank2("projection is not rank 2 inside a single block")
    rng_basis = v[:, -2:][:, ::-1]
    v1 = rng_basis[:, 0] if first is None else fb @ np.asarray(first, dtype=complex)
    v1 = v1 / np.linalg.norm(v1)
    if second is None:
        cand = [c for c in rng_basis.T if abs(np.vdot(v1, c)) < 1 - 1e-6]
        second = cand[0]
    v2 = fb @ np.asarray(second, dtype=complex)
    v2 = v2 - np.vdot(v1, v2) * v1
    if np.linalg.norm(v2) < 1e-8:
        raise NotRank2("chart vectors do not span the corner")
    v2 = v2 / np.linalg.norm(v2)
    return CornerChart(A, block, np.column_stack([v1, v2]))


StateMap = Callable[[np.ndarray], np.ndarray]


def m2_state_map(J: JordanMap) -> StateMap:
    """Dual (Kadison) action of a Jordan symmetry of ``M_2`` on 2 x 2 densities."""
    if J.algebra.dims != (2,):
        raise NotJordan("expected a Jordan map of M_2")
    K = KadisonView(require_validated(J))

    def fn(rho):
        return kadison_apply(K, _m2_state(J.algebra, rho)).rho[0]

    return fn


def _m2_state(algebra, rho):
    from .states import State
    return State(algebra, (rho,))


def induced_rotation(J2: Union[JordanMap, StateMap], return_residual=False):
    """The ``R`` in ``O(3)`` with ``bloch(J2*(rho(v))) = R v`` for all ``v``.

    ``J2`` is either a Jordan symmetry of ``M_2`` (its dual action is used) or
    directly an affine map on 2 x 2 density matrices.

    Raises:
        NotJordan: if the induced map is not an orthogonal linear map.
    """
    fn = m2_state_map(J2) if isinstance(J2, JordanMap) else J2
    centre = density_to_bloch(fn(bloch_to_density(np.zeros(3))))
    R = np.column_stack([density_to_bloch(fn(bloch_to_density(e))) - centre for e in np.eye(3)])
    residual = max(float(np.linalg.norm(centre)), float(np.linalg.norm(R.T @ R - np.eye(3))),
                   abs(abs(np.linalg.det(R)) - 1))
    if residual > TOL_ORTHOGONAL:
        raise NotJordan(f"induced map is not in O(3) (residual {residual:.3e})")
    return (R, residual) if return_residual else R


@dataclass
class OrientationReport:
    verdict: Orientation
    block_labels: tuple
    corner_checks: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(c["consistent"] for c in self.corner_checks)

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value,
                "block_labels": [lab.value for lab in self.block_labels],
                "corner_checks": [{"block": c["block"], "det": c["det"], "residual": c["residual"]}
                                  for c in self.corner_checks]}


def corner_determinant(J: JordanMap, omega: PureState, omega2: PureState,
                       first=None, second=None, image_first=None, image_second=None):
    """Determinant and residual of the map induced by ``J`` from the corner of two states.

    The source chart starts from ``first``/``second`` (default: the two state
    vectors); the target chart from the images of the two states unless
    ``image_first``/``image_second`` are given.
    """
    W = wigner_from_jordan(J)
    K = KadisonView(J)
    f = corner_projection(omega, omega2)
    src = corner_chart(f, omega.block, omega.psi if first is None else first,
                       omega2.psi if second is None else second)
    w1, w2 = W(omega), W(omega2)
    g = corner_projection(w1, w2)
    dst = corner_chart(g, w1.block, w1.psi if image_first is None else image_first,
                       w2.psi if image_second is None else image_second)

    def fn(rho):
        image = kadison_apply(K, _full_state(src.embed(rho)))
        return dst.compress(AlgebraElement(J.algebra, image.rho))

    R, residual = induced_rotation(fn, return_residual=True)
    return float(np.linalg.det(R)), residual


def _full_state(x: AlgebraElement):
    from .states import State
    return State(x.algebra, tuple(0.5 * (b + mc.adjoint(b)) for b in x.blocks))


def orientation_of(J: JordanMap, seed=0) -> OrientationReport:
    """Classify ``J`` as orientation preserving, reversing, mixed or trivial.

    The verdict comes from the per-block Thomsen labels. For every block of
    size >= 2 one random corner is mapped through ``J`` and the sign of the
    induced determinant is compared with the label.
    """
    require_validated(J)
    A = J.algebra
    labels = thomsen_decompose(J).labels
    big = [lab for n, lab in zip(A.dims, labels) if n >= 2]
    if not big:
        verdict = Orientation.TRIVIAL
    elif all(lab == Label.HOM for lab in big):
        verdict = Orientation.PRESERVING
    elif all(lab == Label.ANTI for lab in big):
        verdict = Orientation.REVERSING
    else:
        verdict = Orientation.MIXED

    rng = np.random.default_rng(seed)
    checks = []
    for i, n in enumerate(A.dims):
        if n < 2:
            continue
        vecs = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(2)]
        det, residual = corner_determinant(J, PureState(A, i, vecs[0]), PureState(A, i, vecs[1]))
        sign = 1 if det > 0 else -1
        expected = {Label.HOM: 1, Label.ANTI: -1}.get(labels[i])
        checks.append({"block": i, "det": sign, "det_value": det, "residual": residual,
                       "consistent": sign == expected and abs(abs(det) - 1) < TOL_ORTHOGONAL})
    return OrientationReport(verdict, tuple(labels), checks)
