"""Jordan, Kadison and Wigner symmetries of a block algebra.

A Jordan map is stored as a real ``d x d`` matrix acting on coordinates in
the frozen hermitian basis (see :func:`jordansym.algebra.hermitian_basis`).
Because the basis is hermitian and orthonormal for the trace pairing, the
same matrix acting on *complex* coordinates is the complexification of the
map, so ``apply_jordan`` works on arbitrary elements.

The three kinds of symmetry are related by

* Kadison: ``K(omega) = omega o J``, computed with the transpose matrix;
* Wigner: the restriction of ``K`` to pure states.

:func:`jordan_from_wigner` goes the hard way round: it rebuilds ``J`` from a
black-box map on pure states, using nothing but its values on a handful of
basis states and superpositions.
"""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Optional

import numpy as np

from . import matrixcore as mc
from .algebra import AlgebraElement, BlockAlgebra, jordan_product
from .errors import (AlgebraMismatch, DimensionMismatch, InputError, NotValidated, OracleInconsistent,
                     ParseError)
from .states import PureState, State, equivalent, tp_amplitude

#: Residual bound for Jordan-product preservation and related identities.
TOL_JORDAN = 1e-8
#: Relative singular-value floor for invertibility of a Jordan matrix.
TOL_INVERTIBLE = 1e-10
#: Minimal |Im| of the normalized overlap deciding unitary vs anti-unitary.
DICHOTOMY_THRESHOLD = 0.5


@dataclass
class CheckReport:
    """Outcome of a verification. Truthy iff the check passed."""

    passed: bool
    max_residual: float = 0.0
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.passed)

    def to_json(self) -> dict:
        return {"passed": bool(self.passed), "max_residual": float(self.max_residual),
                "witness": self.witness, "details": self.details}


def jordan_structure(algebra: BlockAlgebra) -> np.ndarray:
    """Structure constants ``C[i, j, k] = Tr((b_i o b_j) b_k)`` of the Jordan product."""
    return _structure(algebra.dims)


@lru_cache(maxsize=32)
def _structure(dims):
    algebra = BlockAlgebra(dims)
    d = algebra.real_dim
    out = np.zeros((d, d, d))
    k = 0
    for bb in algebra.basis_blocks:
        m = len(bb)
        prod = np.einsum("inm,jmk->ijnk", bb, bb)
        sym = 0.5 * (prod + prod.transpose(1, 0, 2, 3))
        out[k:k + m, k:k + m, k:k + m] = np.einsum("ijnk,lkn->ijl", sym, bb).real
        k += m
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class JordanMap:
    """Real-linear map on the self-adjoint part, in hermitian-basis coordinates."""

    algebra: BlockAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float, copy=True)
        d = self.algebra.real_dim
        if m.shape != (d, d):
            raise DimensionMismatch(f"Jordan matrix must be {d}x{d}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InputError("Jordan matrix entries must be finite")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @cached_property
    def report(self) -> CheckReport:
        """Exhaustive basis-table validation (deterministic, no sampling)."""
        return is_jordan_symmetry(self, trials=0)

    @property
    def is_valid(self) -> bool:
        return self.report.passed

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        return apply_jordan(self, a)

    def compose(self, other: "JordanMap") -> "JordanMap":
        """``self o other``."""
        _same(self, other)
        return JordanMap(self.algebra, self.matrix @ other.matrix)

    def inverse(self) -> "JordanMap":
        return JordanMap(self.algebra, np.linalg.inv(self.matrix))

    @classmethod
    def identity(cls, algebra) -> "JordanMap":
        return cls(algebra, np.eye(algebra.real_dim))

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(),
                "matrix": [[float(x) for x in row] for row in self.matrix]}

    @classmethod
    def from_json(cls, obj) -> "JordanMap":
        try:
            return cls(BlockAlgebra.from_json(obj["algebra"]), np.asarray(obj["matrix"], dtype=float))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad Jordan map object: {exc}") from exc


def _same(x, y):
    if x.algebra != y.algebra:
        raise AlgebraMismatch(f"algebras differ: {x.algebra.dims} vs {y.algebra.dims}")


def require_validated(J: JordanMap) -> JordanMap:
    if not J.is_valid:
        raise NotValidated(f"map is not a Jordan symmetry: {J.report.witness}")
    return J


def apply_jordan(J: JordanMap, a: AlgebraElement) -> AlgebraElement:
    """Complexified action ``J(x + iy) = J(x) + iJ(y)``."""
    _same(J, a)
    return J.algebra.from_coords(J.matrix @ a.coords())


def _random_selfadjoint(algebra, rng):
    c = rng.standard_normal(algebra.real_dim)
    return c / np.linalg.norm(c)


def is_jordan_symmetry(J: JordanMap, trials=0, seed=0, tol=TOL_JORDAN) -> CheckReport:
    """Check invertibility and ``J(a o b) = J(a) o J(b)``.

    The full table of basis pairs is checked, which already suffices by
    bilinearity; ``trials`` extra random self-adjoint pairs are checked on
    top, through the element arithmetic rather than structure constants.
    """
    algebra = J.algebra
    M = J.matrix
    sv = np.linalg.svd(M, compute_uv=False)
    details = {"min_singular_value": float(sv[-1]), "max_singular_value": float(sv[0])}
    if sv[-1] <= TOL_INVERTIBLE * sv[0]:
        return CheckReport(False, float("inf"), {"reason": "not invertible"}, details)

    C = jordan_structure(algebra)
    lhs = np.einsum("kl,ijl->ijk", M, C)
    rhs = np.einsum("pi,qj,pqk->ijk", M, M, C, optimize=True)
    res = np.linalg.norm(lhs - rhs, axis=2)
    i, j = np.unravel_index(np.argmax(res), res.shape)
    worst = float(res[i, j])
    witness = {"reason": "basis pair", "pair": [int(i), int(j)], "residual": worst}

    rng = np.random.default_rng(seed)
    for t in range(trials):
        x, y = _random_selfadjoint(algebra, rng), _random_selfadjoint(algebra, rng)
        xe, ye = algebra.from_coords(x), algebra.from_coords(y)
        r = (apply_jordan(J, jordan_product(xe, ye))
             - jordan_product(apply_jordan(J, xe), apply_jordan(J, ye))).norm()
        if r > worst:
            worst = float(r)
            witness = {"reason": "random pair", "trial": t, "residual": worst}

    unit = (apply_jordan(J, algebra.identity()) - algebra.identity()).norm()
    details["unit_residual"] = float(unit)
    passed = worst < tol
    return CheckReport(passed, worst, None if passed else witness, details)


@dataclass(frozen=True)
class KadisonView:
    """Affine map on states generated by a Jordan symmetry."""

    jordan: JordanMap

    def __call__(self, omega: State) -> State:
        return kadison_apply(self, omega)


def kadison_apply(K: KadisonView, omega) -> State:
    """``K(omega) = omega o J``: ``Tr(K(rho) a) = Tr(rho J(a))``."""
    J = require_validated(K.jordan)
    if isinstance(omega, PureState):
        omega = omega.as_state()
    _same(J, omega)
    r = AlgebraElement(omega.algebra, omega.rho).coords().real
    rho = J.algebra.from_coords(J.matrix.T @ r)
    return State(J.algebra, tuple(0.5 * (b + mc.adjoint(b)) for b in rho.blocks))


class WignerOracle:
    """Black-box map on the pure states of ``algebra``.

    Any callable ``PureState -> PureState`` can be wrapped; nothing about its
    linear structure is assumed.
    """

    def __init__(self, algebra: BlockAlgebra, fn: Callable[[PureState], PureState]):
        self.algebra = algebra
        self.fn = fn

    def __call__(self, omega: PureState) -> PureState:
        out = self.fn(omega)
        if not isinstance(out, PureState) or out.algebra != self.algebra:
            raise OracleInconsistent("oracle returned something other than a pure state")
        return out


def _pure_from_density(algebra, rho: AlgebraElement) -> PureState:
    traces = [np.trace(b).real for b in rho.blocks]
    i = int(np.argmax(traces))
    w, v = mc.hermitian_eig(rho.blocks[i], tol=1e-8)
    return PureState(algebra, i, v[:, -1])


def wigner_from_jordan(J: JordanMap) -> WignerOracle:
    """Restriction of the Kadison map of ``J`` to pure states."""
    require_validated(J)
    K = KadisonView(J)

    def fn(omega):
        image = kadison_apply(K, omega)
        return _pure_from_density(J.algebra, AlgebraElement(J.algebra, image.rho))

    return WignerOracle(J.algebra, fn)


def _random_pair(algebra, rng):
    """Two random pure states; same block with probability 3/4."""
    weights = np.asarray(algebra.dims, dtype=float)
    i = int(rng.choice(algebra.num_blocks, p=weights / weights.sum()))
    j = i if rng.random() < 0.75 else int(rng.integers(algebra.num_blocks))
    out = []
    for b in (i, j):
        n = algebra.dims[b]
        out.append(PureState(algebra, b, rng.standard_normal(n) + 1j * rng.standard_normal(n)))
    return out


def is_wigner(W, trials=200, seed=0, tol=TOL_JORDAN, algebra=None) -> CheckReport:
    """Sampled check that ``W`` preserves transition probabilities and equivalence."""
    algebra = algebra or W.algebra
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, None
    for t in range(trials):
        w1, w2 = _random_pair(algebra, rng)
        try:
            v1, v2 = W(w1), W(w2)
        except OracleInconsistent as exc:
            return CheckReport(False, float("inf"), {"trial": t, "reason": str(exc)})
        if equivalent(w1, w2) != equivalent(v1, v2):
            return CheckReport(False, float("inf"),
                               {"trial": t, "reason": "equivalence class not preserved"})
        r = abs(tp_amplitude(v1, v2) - tp_amplitude(w1, w2))
        if r > worst:
            worst = r
            witness = {"trial": t, "reason": "transition probability changed", "residual": r}
    passed = worst < tol
    return CheckReport(passed, worst, None if passed else witness)


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Block permutation plus one (anti-)unitary per block.

    The pure state in block ``i`` with vector ``psi`` is sent to block
    ``permutation[i]`` with vector ``u_i psi`` (or its entrywise conjugate when
    ``antiunitary[i]``). The generating Jordan map is
    ``J(a)_i = u_i^* t_i(a_{permutation[i]}) u_i`` with ``t_i`` the transpose
    on anti-unitary blocks.
    """

    algebra: BlockAlgebra
    permutation: tuple
    unitaries: tuple
    antiunitary: tuple

    def __post_init__(self):
        k = self.algebra.num_blocks
        perm = tuple(int(p) for p in self.permutation)
        if sorted(perm) != list(range(k)) or len(self.unitaries) != k or len(self.antiunitary) != k:
            raise DimensionMismatch("permutation and per-block data must cover every block once")
        us = []
        for i, u in enumerate(self.unitaries):
            u = mc.as_matrix(u)
            n = self.algebra.dims[i]
            if self.algebra.dims[perm[i]] != n or u.shape != (n, n):
                raise DimensionMismatch(f"block {i}: operator shape {u.shape} does not fit")
            u.flags.writeable = False
            us.append(u)
        object.__setattr__(self, "permutation", perm)
        object.__setattr__(self, "unitaries", tuple(us))
        object.__setattr__(self, "antiunitary", tuple(bool(f) for f in self.antiunitary))

    def jordan(self) -> JordanMap:
        A = self.algebra
        M = np.zeros((A.real_dim, A.real_dim))
        start = 0
        for s, bb in enumerate(A.basis_blocks):
            for k, b in enumerate(bb):
                blocks = [np.zeros((n, n), dtype=complex) for n in A.dims]
                for i, p in enumerate(self.permutation):
                    if p == s:
                        u = self.unitaries[i]
                        x = b.T if self.antiunitary[i] else b
                        blocks[i] = mc.adjoint(u) @ x @ u
                M[:, start + k] = AlgebraElement(A, blocks).coords().real
            start += len(bb)
        return JordanMap(A, M)

    def oracle(self) -> WignerOracle:
        """Pure-state map that normalizes ``u_i psi``; non-unitary ``u_i`` break it."""

        def fn(omega):
            v = self.unitaries[omega.block] @ omega.psi
            if self.antiunitary[omega.block]:
                v = np.conj(v)
            return PureState(self.algebra, self.permutation[omega.block], v)

        return WignerOracle(self.algebra, fn)

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(),
                "permutation": list(self.permutation),
                "blocks": [{"u": mc.matrix_to_json(u), "antiunitary": f}
                           for u, f in zip(self.unitaries, self.antiunitary)]}

    @classmethod
    def from_json(cls, obj) -> "CanonicalForm":
        try:
            algebra = BlockAlgebra.from_json(obj["algebra"])
            perm = obj.get("permutation", list(range(algebra.num_blocks)))
            us = [mc.matrix_from_json(b["u"]) for b in obj["blocks"]]
            flags = [bool(b.get("antiunitary", False)) for b in obj["blocks"]]
            return cls(algebra, tuple(perm), tuple(us), tuple(flags))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad oracle spec: {exc}") from exc


def jordan_from_wigner(W, algebra=None, trials=50, seed=0, tol=TOL_JORDAN,
                       return_form=False):
    """Rebuild the Jordan symmetry behind a Wigner symmetry.

    For each block the oracle is queried on the basis vectors ``e_k`` and on
    ``(e_1 + e_k)/sqrt(2)`` and ``(e_1 + i e_k)/sqrt(2)``. The first image
    keeps its phase; every other image is rephased so its overlap in the
    ``(e_1 + e_k)`` image is positive real. The image of ``(e_1 + i e_k)``
    then carries the relative coefficient ``+i`` (unitary) or ``-i``
    (anti-unitary).

    Raises:
        OracleInconsistent: if the oracle answers are not those of a Wigner
            symmetry, or the rebuilt map disagrees with it on a random sample.
    """
    A = algebra or W.algebra
    perm, us, flags = [], [], []
    for i, n in enumerate(A.dims):
        eye = np.eye(n, dtype=complex)
        images = [W(PureState(A, i, eye[k])) for k in range(n)]
        target = images[0].block
        if any(im.block != target for im in images) or A.dims[target] != n:
            raise OracleInconsistent(f"block {i}: basis images scatter over blocks")
        phis = [im.psi.copy() for im in images]
        anti = None
        for k in range(1, n):
            chi = W(PureState(A, i, eye[0] + eye[k])).psi
            c1, ck = np.vdot(phis[0], chi), np.vdot(phis[k], chi)
            if abs(c1) < 1e-6 or abs(ck) < 1e-6:
                raise OracleInconsistent(f"block {i}: superposition image lost a component")
            phis[k] = phis[k] * (ck / c1) / abs(ck / c1)
            chi = W(PureState(A, i, eye[0] + 1j * eye[k])).psi
            c1, ck = np.vdot(phis[0], chi), np.vdot(phis[k], chi)
            mu = ck / c1
            mu = mu / abs(mu) if abs(mu) > 1e-12 else 0.0
            if mu.imag > DICHOTOMY_THRESHOLD:
                kind = False
            elif mu.imag < -DICHOTOMY_THRESHOLD:
                kind = True
            else:
                raise OracleInconsistent(f"block {i}: cannot tell unitary from anti-unitary")
            if anti is not None and kind != anti:
                raise OracleInconsistent(f"block {i}: mixed unitary/anti-unitary answers")
            anti = kind
        anti = bool(anti)
        V = np.column_stack(phis)
        if np.linalg.norm(mc.adjoint(V) @ V - np.eye(n)) > tol:
            raise OracleInconsistent(f"block {i}: basis images are not orthonormal")
        perm.append(target)
        # anti-unitary oracle acts as psi -> V conj(psi), i.e. J(a) = conj(V)^* a^T conj(V)
        us.append(np.conj(V) if anti else V)
        flags.append(anti)
    if sorted(perm) != list(range(A.num_blocks)):
        raise OracleInconsistent("block map is not a permutation")
    form = CanonicalForm(A, tuple(perm), tuple(us), tuple(flags))
    J = form.jordan()
    if not J.is_valid:
        raise OracleInconsistent("reconstructed map is not a Jordan symmetry")
    W2 = wigner_from_jordan(J)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        omega = _random_pair(A, rng)[0]
        x, y = W(omega), W2(omega)
        if x.block != y.block or np.linalg.norm(x.projector() - y.projector()) > tol:
            raise OracleInconsistent("reconstructed symmetry disagrees with the oracle")
    return (J, form) if return_form else J


def herstein_defects(J: JordanMap, a: AlgebraElement, b: AlgebraElement):
    """``(i[J(ab) - J(a)J(b)], i[J(ab) - J(b)J(a)])``."""
    _same(J, a)
    _same(J, b)
    Jab, Ja, Jb = J(a @ b), J(a), J(b)
    return 1j * (Jab - Ja @ Jb), 1j * (Jab - Jb @ Ja)


def _rand_element(algebra, rng):
    c = rng.standard_normal(algebra.real_dim) + 1j * rng.standard_normal(algebra.real_dim)
    return algebra.from_coords(c / np.linalg.norm(c))


def check_herstein_identities(J: JordanMap, trials=20, seed=0, tol=TOL_JORDAN) -> CheckReport:
    """Sampled check of Herstein's identities and defect orthogonality.

    Identities, for ``a^b = i[J(ab) - J(a)J(b)]`` and ``a_b = i[J(ab) - J(b)J(a)]``:

    ``i``    J(aba) = J(a)J(b)J(a)
    ``ii``   J(abc + cba) = J(a)J(b)J(c) + J(c)J(b)J(a)
    ``iii``  a^b a_b = 0
    ``iv``   a^b J(c) a^b = i a^b J((ab - ba)c)
    ``v``    a^b J((ab - ba)c) a_b = 0
    ``vi``   a^b J(ab - ba) J(c) J(ab - ba) a_b = 0
    ``vii``-``x``  additivity of the defects in either slot
    ``K1``   (J(ab) - J(a)J(b)) (J(cd) - J(d)J(c)) = 0
    ``K2``   (J(ab) - J(b)J(a)) (J(cd) - J(c)J(d)) = 0
    """
    rng = np.random.default_rng(seed)
    names = ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "K1", "K2"]
    worst = dict.fromkeys(names, 0.0)
    witnesses = {}
    for t in range(trials):
        a, b, c, d = (_rand_element(J.algebra, rng) for _ in range(4))
        up, lo = herstein_defects(J, a, b)
        comm = a @ b - b @ a
        Ja, Jb, Jc = J(a), J(b), J(c)
        res = {
            "i": J(a @ b @ a) - Ja @ Jb @ Ja,
            "ii": J(a @ b @ c + c @ b @ a) - (Ja @ Jb @ Jc + Jc @ Jb @ Ja),
            "iii": up @ lo,
            "iv": up @ Jc @ up - 1j * (up @ J(comm @ c)),
            "v": up @ J(comm @ c) @ lo,
            "vi": up @ J(comm) @ Jc @ J(comm) @ lo,
            "vii": herstein_defects(J, a, b)[0] + herstein_defects(J, a, c)[0]
            - herstein_defects(J, a, b + c)[0],
            "viii": herstein_defects(J, a, b)[1] + herstein_defects(J, a, c)[1]
            - herstein_defects(J, a, b + c)[1],
            "ix": herstein_defects(J, a, c)[0] + herstein_defects(J, b, c)[0]
            - herstein_defects(J, a + b, c)[0],
            "x": herstein_defects(J, a, c)[1] + herstein_defects(J, b, c)[1]
            - herstein_defects(J, a + b, c)[1],
            "K1": (J(a @ b) - Ja @ Jb) @ (J(c @ d) - J(d) @ Jc),
            "K2": (J(a @ b) - Jb @ Ja) @ (J(c @ d) - Jc @ J(d)),
        }
        for name, r in res.items():
            r = r.norm()
            if r > worst[name]:
                worst[name] = float(r)
            if r >= tol and name not in witnesses:
                witnesses[name] = {"identity": name, "trial": t, "residual": float(r)}
    max_res = max(worst.values())
    witness = next((witnesses[n] for n in names if n in witnesses), None)
    return CheckReport(max_res < tol, max_res, witness,
                       {"per_identity": worst, "witnesses": witnesses})
