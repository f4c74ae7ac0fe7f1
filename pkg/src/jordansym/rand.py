"""Seeded random generators.

Every function takes a ``numpy.random.Generator``; nothing here touches global
random state, so identical seeds give identical objects.
"""

import numpy as np
from scipy.stats import unitary_group

from .algebra import AlgebraElement, BlockAlgebra
from .states import PureState, State
from .symmetry import CanonicalForm


def random_unitary(n, rng) -> np.ndarray:
    """Haar-distributed unitary."""
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.random())]])
    return unitary_group.rvs(n, random_state=rng)


def random_vector(n, rng) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_pure_state(algebra: BlockAlgebra, rng, block=None) -> PureState:
    """Pure state with a uniformly random unit vector.

    Without ``block``, the carrying block is drawn with weight proportional
    to its dimension.
    """
    if block is None:
        w = np.asarray(algebra.dims, dtype=float)
        block = int(rng.choice(algebra.num_blocks, p=w / w.sum()))
    return PureState(algebra, block, random_vector(algebra.dims[block], rng))


def random_state(algebra: BlockAlgebra, rng) -> State:
    """Full-rank mixed state from a Ginibre matrix."""
    blocks = []
    for n in algebra.dims:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        blocks.append(g @ g.conj().T)
    total = sum(np.trace(b).real for b in blocks)
    return State(algebra, tuple(b / total for b in blocks))


def random_element(algebra: BlockAlgebra, rng, selfadjoint=False):
    """Element with Gaussian coordinates, normalized to unit Hilbert-Schmidt norm."""
    c = rng.standard_normal(algebra.real_dim)
    if not selfadjoint:
        c = c + 1j * rng.standard_normal(algebra.real_dim)
    return algebra.from_coords(c / np.linalg.norm(c))


def random_positive(algebra: BlockAlgebra, rng):
    a = random_element(algebra, rng)
    return AlgebraElement(algebra, [b.conj().T @ b for b in a.blocks])


def random_canonical_form(algebra: BlockAlgebra, rng, transpose=None, permute=True) -> CanonicalForm:
    """Random symmetry in canonical form.

    Blocks of equal dimension are shuffled among themselves (if ``permute``),
    each block gets a Haar unitary, and each block is composed with the
    transpose with probability 1/2, or as forced by ``transpose`` (a bool
    for all blocks or a per-block sequence).
    """
    k = algebra.num_blocks
    perm = list(range(k))
    if permute:
        for n in set(algebra.dims):
            idx = [i for i in range(k) if algebra.dims[i] == n]
            for i, j in zip(idx, rng.permutation(idx)):
                perm[i] = int(j)
    us = tuple(random_unitary(n, rng) for n in algebra.dims)
    if transpose is None:
        flags = tuple(bool(rng.random() < 0.5) for _ in range(k))
    elif isinstance(transpose, bool):
        flags = (transpose,) * k
    else:
        flags = tuple(bool(f) for f in transpose)
    return CanonicalForm(algebra, tuple(perm), us, flags)


def random_jordan(algebra: BlockAlgebra, rng, transpose=None, permute=True):
    """Random Jordan symmetry, valid by construction."""
    return random_canonical_form(algebra, rng, transpose, permute).jordan()


def _random_contraction_spectrum(n, rng):
    v = random_unitary(n, rng)
    return v @ np.diag(rng.random(n)) @ v.conj().T


def random_effect(algebra: BlockAlgebra, rng, fixed: PureState = None):
    """Random ``a`` with ``0 <= a <= 1``.

    With ``fixed``, ``a`` also takes the value 1 on that pure state: it is its
    carrier plus a random effect on the orthogonal complement in the block.
    """
    blocks = [_random_contraction_spectrum(n, rng) for n in algebra.dims]
    if fixed is not None:
        p = fixed.projector()
        q = np.eye(len(p)) - p
        blocks[fixed.block] = p + q @ blocks[fixed.block] @ q
    return AlgebraElement(algebra, blocks)
