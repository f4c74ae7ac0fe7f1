"""States on block algebras and transition probabilities between pure states.

A state is a tuple of positive block density matrices with unit total trace,
acting by ``a -> sum_i Tr(rho_i a_i)``. A pure state lives in a single block
and is stored by a unit vector whose phase carries no meaning.

Three independent routes to the transition probability are provided:

* :func:`tp_amplitude` -- squared overlap of vector representatives, zero
  across blocks;
* :func:`tp_norm` -- ``1 - ||rho - rho'||_1^2 / 4`` from the trace norm;
* :func:`tp_carrier` -- value of one state on the support projection of the
  other.

:func:`tp_inf_witness` evaluates the infimum formula at a single feasible
effect, which can only overshoot the true value.
"""

from dataclasses import dataclass

import numpy as np

from . import matrixcore as mc
from .algebra import AlgebraElement, BlockAlgebra, is_positive
from .errors import AlgebraMismatch, InfeasibleWitness, InputError, ParseError

TOL_STATE = 1e-10


@dataclass(frozen=True, eq=False)
class State:
    """Normal state given by one density block per algebra block."""

    algebra: BlockAlgebra
    rho: tuple

    def __post_init__(self):
        if len(self.rho) != self.algebra.num_blocks:
            raise InputError("one density block per algebra block required")
        blocks = []
        for n, r in zip(self.algebra.dims, self.rho):
            r = mc.as_matrix(r)
            if r.shape != (n, n):
                raise InputError(f"density block of shape {r.shape} where {n}x{n} expected")
            if mc.hermiticity_defect(r) > TOL_STATE:
                raise InputError("density block is not self-adjoint")
            if np.linalg.eigvalsh(r)[0] < -TOL_STATE:
                raise InputError("density block is not positive")
            r.flags.writeable = False
            blocks.append(r)
        total = sum(np.trace(r).real for r in blocks)
        if abs(total - 1) >= TOL_STATE:
            raise InputError(f"total trace is {total!r}, not 1")
        object.__setattr__(self, "rho", tuple(blocks))

    def dense(self) -> np.ndarray:
        return AlgebraElement(self.algebra, self.rho).dense()

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(),
                "blocks": [mc.matrix_to_json(r) for r in self.rho]}

    @classmethod
    def from_json(cls, obj) -> "State":
        try:
            blocks = [mc.matrix_from_json(b) for b in obj["blocks"]]
            if "algebra" in obj:
                algebra = BlockAlgebra.from_json(obj["algebra"])
            else:
                algebra = BlockAlgebra(tuple(b.shape[0] for b in blocks))
            return cls(algebra, tuple(blocks))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad state object: {exc}") from exc
        except InputError as exc:
            raise ParseError(str(exc)) from exc


@dataclass(frozen=True, eq=False)
class PureState:
    """Pure state carried by block ``block`` with unit vector ``psi``."""

    algebra: BlockAlgebra
    block: int
    psi: np.ndarray

    def __post_init__(self):
        self.algebra.check_block(self.block)
        psi = np.array(self.psi, dtype=complex).ravel()
        if psi.shape != (self.algebra.dims[self.block],):
            raise InputError(f"vector of length {psi.size} for block of size "
                             f"{self.algebra.dims[self.block]}")
        if not np.all(np.isfinite(psi)):
            raise InputError("vector entries must be finite")
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InputError("zero vector does not define a state")
        psi = psi / norm
        psi.flags.writeable = False
        object.__setattr__(self, "psi", psi)

    def projector(self) -> np.ndarray:
        """Rank-one projector in the carrying block."""
        return np.outer(self.psi, np.conj(self.psi))

    def density(self) -> AlgebraElement:
        return self.algebra.embed(self.block, self.projector())

    def as_state(self) -> State:
        return State(self.algebra, self.density().blocks)

    def dense_vector(self) -> np.ndarray:
        """Vector representative in C^N."""
        v = np.zeros(self.algebra.total_dim, dtype=complex)
        v[self.algebra.block_slice(self.block)] = self.psi
        return v

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(), "block": int(self.block),
                "re": [float(x) for x in self.psi.real],
                "im": [float(x) for x in self.psi.imag]}

    @classmethod
    def from_json(cls, obj, algebra=None) -> "PureState":
        try:
            if "algebra" in obj:
                algebra = BlockAlgebra.from_json(obj["algebra"])
            if algebra is None:
                raise ParseError("pure state needs an algebra")
            re = np.asarray(obj["re"], dtype=float)
            im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
            return cls(algebra, int(obj["block"]), re + 1j * im)
        except (KeyError, TypeError, ValueError) as exc:
            # InputError is a ValueError, so validation failures land here too
            raise ParseError(f"bad pure state object: {exc}") from exc


def _same(x, y):
    if x.algebra != y.algebra:
        raise AlgebraMismatch(f"algebras differ: {x.algebra.dims} vs {y.algebra.dims}")


def _as_state(omega) -> State:
    return omega.as_state() if isinstance(omega, PureState) else omega


def state_eval(omega, a: AlgebraElement) -> complex:
    """Value of a state on an algebra element."""
    _same(omega, a)
    if isinstance(omega, PureState):
        psi = omega.psi
        return complex(np.vdot(psi, a.blocks[omega.block] @ psi))
    return complex(sum(np.trace(r @ x) for r, x in zip(omega.rho, a.blocks)))


def carrier(omega) -> AlgebraElement:
    """Support projection: the smallest projection on which the state is 1."""
    omega = _as_state(omega)
    return AlgebraElement(omega.algebra, [mc.range_projection(r) for r in omega.rho])


def equivalent(omega: PureState, omega2: PureState) -> bool:
    """Pure states on a block algebra are equivalent iff they share a block."""
    _same(omega, omega2)
    return omega.block == omega2.block


def tp_amplitude(omega: PureState, omega2: PureState) -> float:
    _same(omega, omega2)
    if omega.block != omega2.block:
        return 0.0
    return float(min(1.0, abs(np.vdot(omega.psi, omega2.psi)) ** 2))


def tp_norm(omega: PureState, omega2: PureState) -> float:
    _same(omega, omega2)
    diff = omega.density() - omega2.density()
    dist = sum(mc.trace_norm(b) for b in diff.blocks)
    return float(np.clip(1 - 0.25 * dist ** 2, 0.0, 1.0))


def tp_carrier(omega: PureState, omega2: PureState) -> float:
    _same(omega, omega2)
    return float(np.clip(state_eval(omega, carrier(omega2)).real, 0.0, 1.0))


def tp_inf_witness(omega: PureState, omega2: PureState, a: AlgebraElement, tol=1e-9) -> float:
    """Value of ``omega`` on a feasible effect ``a`` (``0 <= a <= 1``, ``omega2(a) = 1``).

    Every feasible effect gives an upper bound for the transition probability;
    ``carrier(omega2)`` attains it.

    Raises:
        InfeasibleWitness: if ``a`` violates the constraints by more than ``tol``.
    """
    _same(omega, omega2)
    _same(omega, a)
    one = a.algebra.identity()
    if not (is_positive(a, tol) and is_positive(one - a, tol)):
        raise InfeasibleWitness("witness is not an effect 0 <= a <= 1")
    if abs(state_eval(omega2, a) - 1) > tol:
        raise InfeasibleWitness("witness does not take value 1 on the second state")
    return float(state_eval(omega, a).real)


TP_FORMULAS = {"amplitude": tp_amplitude, "norm": tp_norm, "carrier": tp_carrier}


def tp_all(omega, omega2) -> dict:
    """All three transition-probability values plus their max pairwise deviation."""
    vals = {name: f(omega, omega2) for name, f in TP_FORMULAS.items()}
    v = list(vals.values())
    vals["max_deviation"] = float(max(v) - min(v))
    return vals
