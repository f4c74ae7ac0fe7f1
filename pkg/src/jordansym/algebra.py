"""Finite-dimensional C*-algebras as direct sums of full matrix blocks.

An algebra ``BlockAlgebra((n1, ..., nk))`` is the concrete algebra of
block-diagonal matrices acting on ``C^n1 + ... + C^nk``, each block appearing
once. Central projections are exactly the sums of block identities.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import matrixcore as mc
from .errors import AlgebraMismatch, DimensionMismatch, IndexOutOfRange, ParseError


@dataclass(frozen=True)
class BlockAlgebra:
    """The algebra of block-diagonal matrices with block sizes ``dims``."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if not dims or any(n < 1 for n in dims):
            raise DimensionMismatch(f"block dimensions must be positive, got {self.dims!r}")
        object.__setattr__(self, "dims", dims)

    @property
    def num_blocks(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        """Dimension N of the Hilbert space the algebra acts on."""
        return sum(self.dims)

    @property
    def real_dim(self) -> int:
        """Real dimension d of the self-adjoint part."""
        return sum(n * n for n in self.dims)

    @cached_property
    def offsets(self) -> tuple:
        return tuple(int(x) for x in np.cumsum((0,) + self.dims[:-1]))

    def block_slice(self, i) -> slice:
        self.check_block(i)
        return slice(self.offsets[i], self.offsets[i] + self.dims[i])

    def check_block(self, i):
        if not 0 <= i < self.num_blocks:
            raise IndexOutOfRange(f"block index {i} out of range for {self.num_blocks} blocks")

    @cached_property
    def basis_blocks(self) -> tuple:
        """Per block, the stacked hermitian basis matrices (n^2, n, n)."""
        return tuple(_block_hermitian_basis(n) for n in self.dims)

    @cached_property
    def basis_owner(self) -> np.ndarray:
        """Block index owning each hermitian basis element."""
        return np.concatenate([np.full(n * n, i) for i, n in enumerate(self.dims)])

    @cached_property
    def dense_basis(self) -> np.ndarray:
        """Hermitian basis as full N x N block-diagonal matrices, shape (d, N, N)."""
        out = np.zeros((self.real_dim, self.total_dim, self.total_dim), dtype=complex)
        k = 0
        for i, bb in enumerate(self.basis_blocks):
            s = self.block_slice(i)
            out[k:k + len(bb), s, s] = bb
            k += len(bb)
        out.flags.writeable = False
        return out

    def identity(self) -> "AlgebraElement":
        return AlgebraElement(self, [np.eye(n) for n in self.dims])

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, [np.zeros((n, n)) for n in self.dims])

    def block_identity(self, i) -> "AlgebraElement":
        """Central projection onto block ``i``."""
        return self.embed(i, np.eye(self.dims[i]))

    def embed(self, i, m) -> "AlgebraElement":
        """Element equal to ``m`` in block ``i`` and zero elsewhere."""
        self.check_block(i)
        blocks = [np.zeros((n, n)) for n in self.dims]
        blocks[i] = m
        return AlgebraElement(self, blocks)

    def from_dense(self, m) -> "AlgebraElement":
        """Compress an N x N matrix to its diagonal blocks."""
        m = mc.as_matrix(m, square=True)
        if m.shape[0] != self.total_dim:
            raise DimensionMismatch(f"expected {self.total_dim}x{self.total_dim}, got {m.shape}")
        return AlgebraElement(self, [m[self.block_slice(i), self.block_slice(i)]
                                     for i in range(self.num_blocks)])

    def from_coords(self, c) -> "AlgebraElement":
        """Element with (complex) coordinates ``c`` in the hermitian basis."""
        c = np.asarray(c)
        if c.shape != (self.real_dim,):
            raise DimensionMismatch(f"expected {self.real_dim} coordinates, got {c.shape}")
        blocks, k = [], 0
        for bb in self.basis_blocks:
            blocks.append(np.tensordot(c[k:k + len(bb)], bb, axes=1))
            k += len(bb)
        return AlgebraElement(self, blocks)

    def to_json(self) -> dict:
        return {"dims": list(self.dims)}

    @classmethod
    def from_json(cls, obj) -> "BlockAlgebra":
        try:
            return cls(tuple(obj["dims"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad algebra object: {exc}") from exc


def _block_hermitian_basis(n) -> np.ndarray:
    # frozen order: diagonal units, symmetric off-diagonals, antisymmetric off-diagonals
    mats = []
    for j in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[j, j] = 1.0
        mats.append(e)
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    for j, k in pairs:
        e = np.zeros((n, n), dtype=complex)
        e[j, k] = e[k, j] = 1 / np.sqrt(2)
        mats.append(e)
    for j, k in pairs:
        e = np.zeros((n, n), dtype=complex)
        e[j, k] = -1j / np.sqrt(2)
        e[k, j] = 1j / np.sqrt(2)
        mats.append(e)
    return np.array(mats).reshape(n * n, n, n)


class AlgebraElement:
    """One complex matrix per block of a ``BlockAlgebra``.

    Elements are immutable; arithmetic returns new elements. The operators
    ``+``, ``-``, scalar ``*`` and ``@`` (algebra product) are provided as
    shorthand for :func:`add`, :func:`scale` and :func:`multiply`.
    """

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra: BlockAlgebra, blocks: Sequence):
        if len(blocks) != algebra.num_blocks:
            raise DimensionMismatch(f"expected {algebra.num_blocks} blocks, got {len(blocks)}")
        frozen = []
        for n, b in zip(algebra.dims, blocks):
            b = mc.as_matrix(b)
            if b.shape != (n, n):
                raise DimensionMismatch(f"block of shape {b.shape} where {n}x{n} expected")
            b.flags.writeable = False
            frozen.append(b)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "blocks", tuple(frozen))

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    def __repr__(self):
        return f"AlgebraElement(dims={self.algebra.dims})"

    def dense(self) -> np.ndarray:
        """Block-diagonal N x N matrix."""
        n = self.algebra.total_dim
        out = np.zeros((n, n), dtype=complex)
        for i, b in enumerate(self.blocks):
            s = self.algebra.block_slice(i)
            out[s, s] = b
        return out

    def coords(self) -> np.ndarray:
        """Complex coordinates in the hermitian basis (real for self-adjoint elements)."""
        return np.concatenate([
            np.einsum("kij,ji->k", bb, b) for bb, b in zip(self.algebra.basis_blocks, self.blocks)
        ])

    def norm(self) -> float:
        """Hilbert-Schmidt norm over all blocks."""
        return float(np.sqrt(sum(np.sum(np.abs(b) ** 2) for b in self.blocks)))

    def op_norm(self) -> float:
        return max(mc.operator_norm(b) for b in self.blocks)

    def is_self_adjoint(self, tol=mc.TOL_HERM) -> bool:
        return all(mc.hermiticity_defect(b) <= tol for b in self.blocks)

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(),
                "blocks": [mc.matrix_to_json(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, obj) -> "AlgebraElement":
        try:
            algebra = BlockAlgebra.from_json(obj["algebra"])
            blocks = [mc.matrix_from_json(b) for b in obj["blocks"]]
            return cls(algebra, blocks)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad element object: {exc}") from exc
        except DimensionMismatch as exc:
            raise ParseError(str(exc)) from exc

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, z):
        if isinstance(z, AlgebraElement):
            return NotImplemented
        return scale(z, self)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return multiply(self, other)


def _same(a, b):
    if a.algebra != b.algebra:
        raise AlgebraMismatch(f"algebras differ: {a.algebra.dims} vs {b.algebra.dims}")


def add(a, b) -> AlgebraElement:
    _same(a, b)
    return AlgebraElement(a.algebra, [x + y for x, y in zip(a.blocks, b.blocks)])


def scale(z, a) -> AlgebraElement:
    return AlgebraElement(a.algebra, [z * x for x in a.blocks])


def multiply(a, b) -> AlgebraElement:
    _same(a, b)
    return AlgebraElement(a.algebra, [x @ y for x, y in zip(a.blocks, b.blocks)])


def adjoint_el(a) -> AlgebraElement:
    return AlgebraElement(a.algebra, [mc.adjoint(x) for x in a.blocks])


def jordan_product(a, b) -> AlgebraElement:
    """Symmetrized product (ab + ba) / 2."""
    _same(a, b)
    return AlgebraElement(a.algebra, [0.5 * (x @ y + y @ x) for x, y in zip(a.blocks, b.blocks)])


def commutator(a, b) -> AlgebraElement:
    _same(a, b)
    return AlgebraElement(a.algebra, [x @ y - y @ x for x, y in zip(a.blocks, b.blocks)])


def is_positive(a, tol=mc.TOL_HERM) -> bool:
    if not a.is_self_adjoint(tol):
        return False
    return all(mc.hermitian_eig(b, tol)[0][0] >= -tol for b in a.blocks)


def is_projection(a, tol=1e-9) -> bool:
    return all(
        np.linalg.norm(b @ b - b) < tol and np.linalg.norm(b - mc.adjoint(b)) < tol
        for b in a.blocks
    )


def hermitian_basis(algebra: BlockAlgebra) -> list:
    """Orthonormal basis of the self-adjoint part under (a, b) -> sum_i Tr(a_i b_i).

    Per block, in this order: diagonal matrix units ``E_jj``; symmetric
    generators ``(E_jk + E_kj)/sqrt(2)`` for ``j < k``; antisymmetric generators
    ``i(E_kj - E_jk)/sqrt(2)`` for ``j < k``. Blocks follow in order.
    """
    out = []
    for i, bb in enumerate(algebra.basis_blocks):
        out.extend(algebra.embed(i, m) for m in bb)
    return out
