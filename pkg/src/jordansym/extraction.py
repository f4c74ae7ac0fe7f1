"""Constructive (anti-)unitary implementation of a Jordan symmetry on one block.

On a full matrix block the restricted map ``alpha`` is an automorphism
(``alpha(a) = u^* a u``) or an anti-automorphism (``alpha(a) = u^* a^T u``,
i.e. ``u^* conj(a) u`` on self-adjoint ``a``). The anti case is reduced to the
automorphism case by precomposing with the transpose. The operator is then
built column by column: with a fixed unit vector ``chi`` and ``phi`` spanning
``alpha^{-1}(|chi><chi|)``, it is the unique map with ``u alpha(a) chi = a phi``.
"""

from dataclasses import dataclass

import numpy as np

from . import matrixcore as mc
from .errors import FlagMismatch, KindMismatch, SingularExtraction
from .symmetry import CheckReport, JordanMap, require_validated
from .thomsen import Label

TOL_UNITARY = 1e-9
TOL_IMPLEMENT = 1e-8
PHASE_THRESHOLD = 1e-8


@dataclass(frozen=True, eq=False)
class ImplementingOperator:
    """``u`` implementing block ``block``; anti-unitary ones act as ``u`` after conjugation."""

    block: int
    u: np.ndarray
    antiunitary: bool

    def to_json(self) -> dict:
        return {"block": int(self.block), "u": mc.matrix_to_json(self.u),
                "antiunitary": bool(self.antiunitary),
                "phase_convention": "first-entry-positive"}


def canonical_phase(u) -> np.ndarray:
    """Rescale by a unit scalar so the first significant entry of column 0 is positive."""
    u = np.array(u, dtype=complex)
    col = u[:, 0]
    k = int(np.argmax(np.abs(col) > PHASE_THRESHOLD))
    z = col[k]
    return u * (abs(z) / z) if abs(z) > PHASE_THRESHOLD else u


def source_block(J: JordanMap, block: int) -> int:
    """Block whose elements ``J`` sends into ``block``."""
    A = J.algebra
    A.check_block(block)
    rows = A.basis_owner == block
    weights = [np.abs(J.matrix[np.ix_(rows, A.basis_owner == s)]).sum()
               for s in range(A.num_blocks)]
    return int(np.argmax(weights))


def _restricted(J, block, src):
    """``a -> J(a)`` restricted to source block ``src`` and target block ``block``."""
    A = J.algebra

    def alpha(a):
        return J(A.embed(src, a)).blocks[block]

    def alpha_inv(x):
        return J.inverse()(A.embed(block, x)).blocks[src]

    return alpha, alpha_inv


def block_kind(J: JordanMap, block: int, seed=0, tol=TOL_IMPLEMENT) -> Label:
    """Whether ``J`` is multiplicative or anti-multiplicative into ``block``.

    Uses two random pairs; on a full matrix block of size >= 2 exactly one of
    the two properties holds for a Jordan symmetry.
    """
    src = source_block(J, block)
    n = J.algebra.dims[block]
    if n == 1:
        return Label.BOTH
    alpha, _ = _restricted(J, block, src)
    rng = np.random.default_rng(seed)
    hom = anti = 0.0
    for _ in range(2):
        a, b = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(2))
        a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
        hom = max(hom, np.linalg.norm(alpha(a @ b) - alpha(a) @ alpha(b)))
        anti = max(anti, np.linalg.norm(alpha(a @ b) - alpha(b) @ alpha(a)))
    if hom < tol <= anti:
        return Label.HOM
    if anti < tol <= hom:
        return Label.ANTI
    raise KindMismatch(f"block {block} is neither purely multiplicative nor anti-multiplicative")


def extract_unitary(J: JordanMap, block: int, kind=None, chi=None) -> ImplementingOperator:
    """Implementing (anti-)unitary of ``J`` on ``block``.

    Args:
        J: a Jordan symmetry.
        block: target block index.
        kind: ``Label.HOM`` or ``Label.ANTI`` (or their string values); must
            match the block's behaviour. ``None`` detects it.
        chi: reference unit vector in the block; defaults to the first
            standard basis vector. Any choice gives the same operator up to
            phase.

    Raises:
        KindMismatch: if ``kind`` disagrees with the block.
        SingularExtraction: if ``alpha^{-1}(|chi><chi|)`` is not a rank-one
            projector or the assembled operator is not unitary.
    """
    require_validated(J)
    actual = block_kind(J, block)
    n = J.algebra.dims[block]
    if kind is None:
        kind = Label.ANTI if actual == Label.ANTI else Label.HOM
    kind = Label(kind)
    if kind == Label.BOTH or (actual != Label.BOTH and kind != actual):
        raise KindMismatch(f"block {block} behaves as {actual.value}, not {kind.value}")
    anti = kind == Label.ANTI
    src = source_block(J, block)
    alpha, alpha_inv = _restricted(J, block, src)
    if anti:
        hom = lambda a: alpha(a.T)  # noqa: E731
        hom_inv = lambda x: alpha_inv(x).T  # noqa: E731
    else:
        hom, hom_inv = alpha, alpha_inv

    chi = np.eye(n, dtype=complex)[0] if chi is None else np.asarray(chi, dtype=complex)
    chi = chi / np.linalg.norm(chi)
    e_phi = hom_inv(np.outer(chi, chi.conj()))
    w, v = mc.hermitian_eig(0.5 * (e_phi + mc.adjoint(e_phi)))
    expected = np.zeros(n)
    expected[-1] = 1.0
    if np.max(np.abs(w - expected)) > 1e-6:
        raise SingularExtraction(f"preimage of |chi><chi| is not a rank-one projector: {w}")
    phi = v[:, -1]
    eye = np.eye(n)
    images = np.column_stack([hom(np.outer(eye[k], phi.conj())) @ chi for k in range(n)])
    # u maps alpha(|e_k><phi|) chi to e_k
    u = mc.adjoint(images)
    if np.linalg.norm(mc.adjoint(u) @ u - eye) > TOL_UNITARY:
        raise SingularExtraction("assembled operator is not unitary")
    return ImplementingOperator(block, canonical_phase(u), anti)


def verify_implementation(J: JordanMap, op: ImplementingOperator, tol=TOL_IMPLEMENT) -> CheckReport:
    """Residuals of ``J(a) = u^* a u`` (or ``u^* conj(a) u``) over the block's hermitian basis."""
    A = J.algebra
    src = source_block(J, op.block)
    alpha, _ = _restricted(J, op.block, src)
    u = op.u
    table = []
    for b in A.basis_blocks[src]:
        x = np.conj(b) if op.antiunitary else b
        table.append(float(np.linalg.norm(alpha(b) - mc.adjoint(u) @ x @ u)))
    worst = max(table)
    k = int(np.argmax(table))
    passed = worst < tol
    return CheckReport(passed, worst, None if passed else {"basis_index": k, "residual": worst},
                       {"residuals": table})


def phase_distance(op1: ImplementingOperator, op2: ImplementingOperator) -> float:
    """``min_{|z| = 1} ||u1 - z u2||`` (Frobenius)."""
    if op1.block != op2.block or op1.antiunitary != op2.antiunitary:
        raise FlagMismatch("operators act on different blocks or differ in anti-unitarity")
    u1, u2 = op1.u, op2.u
    overlap = np.trace(mc.adjoint(u2) @ u1)
    z = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    # evaluate the difference directly; the closed form sqrt(|u1|^2 + |u2|^2 - 2|overlap|) cancels badly
    return float(np.linalg.norm(u1 - z * u2))
