import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordansym import (BlockAlgebra, CanonicalForm, JordanMap, Label, ThomsenDecomposition,
                       classify_block, defect_spaces, thomsen_decompose, verify_centrality)
from jordansym.acceptance import thomsen_fixture
from jordansym.errors import IndexOutOfRange, NotValidated
from jordansym.rand import random_canonical_form

from conftest import dims_strategy, seeds


def transpose_map(algebra, flags):
    return CanonicalForm(algebra, tuple(range(algebra.num_blocks)),
                         tuple(np.eye(n) for n in algebra.dims), tuple(flags)).jordan()


def support_blocks(space):
    A = space.algebra
    return {i for i in range(A.num_blocks) for b in space.basis
            if np.linalg.norm(b[A.block_slice(i), A.block_slice(i)]) > 1e-9}


def test_defect_space_examples():
    A = BlockAlgebra((2,))
    one, two = defect_spaces(JordanMap.identity(A))
    assert one.dim == 0 and two.dim > 0
    one, two = defect_spaces(transpose_map(A, [True]))
    assert one.dim > 0 and two.dim == 0
    B = BlockAlgebra((2, 2))
    one, two = defect_spaces(transpose_map(B, [False, True]))
    assert support_blocks(one) == {1}
    assert support_blocks(two) == {0}


def test_defect_basis_orthonormal(rng):
    J = random_canonical_form(BlockAlgebra((3, 2)), rng).jordan()
    for space in defect_spaces(J):
        flat = np.array([b.ravel() for b in space.basis])
        assert np.linalg.norm(flat.conj() @ flat.T - np.eye(space.dim)) < 1e-10


def test_fixture_decomposition():
    dec = thomsen_decompose(thomsen_fixture())
    assert dec.labels == (Label.HOM, Label.ANTI, Label.BOTH)
    A = dec.algebra
    for p, i in ((dec.p1, 0), (dec.p2, 1), (dec.p3, 2)):
        assert np.max(np.abs(p.dense() - A.block_identity(i).dense())) < 1e-9
    assert dec.to_json()["p1_blocks"] == [1, 0, 0]
    assert dec.to_json()["p2_blocks"] == [0, 1, 0]
    assert dec.to_json()["p3_blocks"] == [0, 0, 1]


def test_identity_examples():
    dec = thomsen_decompose(JordanMap.identity(BlockAlgebra((2,))))
    assert dec.block_indicators(1) == [1]
    assert dec.p2.norm() < 1e-9 and dec.p3.norm() < 1e-9
    dec = thomsen_decompose(JordanMap.identity(BlockAlgebra((1, 1))))
    assert dec.block_indicators(3) == [1, 1]
    assert dec.p1.norm() < 1e-9 and dec.p2.norm() < 1e-9


def test_classify_block():
    dec = thomsen_decompose(thomsen_fixture())
    assert classify_block(dec, 1) == Label.ANTI
    assert classify_block(dec, 0) == Label.HOM
    assert classify_block(dec, 2) == Label.BOTH
    with pytest.raises(IndexOutOfRange):
        classify_block(dec, 3)


def test_requires_validated():
    A = BlockAlgebra((2,))
    with pytest.raises(NotValidated):
        thomsen_decompose(JordanMap(A, 2 * np.eye(4)))


@given(dims_strategy, seeds)
def test_decomposition_invariants(dims, seed):
    rng = np.random.default_rng(seed)
    A = BlockAlgebra(dims)
    form = random_canonical_form(A, rng)
    dec = thomsen_decompose(form.jordan())
    ps = (dec.p1, dec.p2, dec.p3)
    for x, y in itertools.combinations(ps, 2):
        assert (x @ y).norm() < 1e-9
    assert (dec.p1 + dec.p2 + dec.p3 - A.identity()).norm() < 1e-9
    assert verify_centrality(dec).passed
    # labels follow the generating data: transpose flags decide on blocks of size >= 2
    for i, n in enumerate(dims):
        want = Label.BOTH if n == 1 else (Label.ANTI if form.antiunitary[i] else Label.HOM)
        assert dec.labels[i] == want


@given(dims_strategy, seeds)
def test_exchange_symmetry(dims, seed):
    rng = np.random.default_rng(seed)
    A = BlockAlgebra(dims)
    J = random_canonical_form(A, rng).jordan()
    flipped = J.compose(transpose_map(A, [True] * A.num_blocks))
    swap = {Label.HOM: Label.ANTI, Label.ANTI: Label.HOM, Label.BOTH: Label.BOTH}
    assert thomsen_decompose(flipped).labels == tuple(swap[x] for x in thomsen_decompose(J).labels)


@given(seeds, st.permutations(range(14)))
def test_uniqueness_under_basis_permutation(seed, order):
    rng = np.random.default_rng(seed)
    J = random_canonical_form(BlockAlgebra((3, 2, 1)), rng).jordan()
    a, b = thomsen_decompose(J), thomsen_decompose(J, basis_order=order)
    for p, q in ((a.p1, b.p1), (a.p2, b.p2), (a.p3, b.p3)):
        assert np.max(np.abs(p.dense() - q.dense())) < 1e-8


@given(seeds)
def test_defect_spaces_annihilate(seed):
    rng = np.random.default_rng(seed)
    J = random_canonical_form(BlockAlgebra((2, 2, 1)), rng, transpose=[False, True, False]).jordan()
    one, two = defect_spaces(J)
    assert one.dim and two.dim
    for _ in range(5):
        alpha = np.tensordot(rng.standard_normal(one.dim), np.array(one.basis), axes=1)
        beta = np.tensordot(rng.standard_normal(two.dim), np.array(two.basis), axes=1)
        assert np.linalg.norm(alpha.conj().T @ beta) < 1e-8
        assert np.linalg.norm(beta.conj().T @ alpha) < 1e-8


def _both_ways(J, p):
    A = J.algebra
    basis = A.dense_basis
    Jb = [J(A.from_dense(b)).dense() for b in basis]
    for i, j in itertools.product(range(len(basis)), repeat=2):
        jab = J(A.from_dense(basis[i] @ basis[j])).dense()
        if (np.linalg.norm((jab - Jb[i] @ Jb[j]) @ p) > 1e-8
                or np.linalg.norm((jab - Jb[j] @ Jb[i]) @ p) > 1e-8):
            return False
    return True


def test_p3_dominates_two_way_central_projections(rng):
    A = BlockAlgebra((2, 1, 1))
    J = random_canonical_form(A, rng).jordan()
    dec = thomsen_decompose(J)
    p3 = dec.p3.dense()
    for mask in itertools.product((0, 1), repeat=A.num_blocks):
        p = sum((m * A.block_identity(i) for i, m in enumerate(mask)), A.zero()).dense()
        if _both_ways(J, p):
            assert np.linalg.norm(p @ p3 - p) < 1e-8


def test_centrality_negative_control():
    A = BlockAlgebra((2, 1))
    dec = thomsen_decompose(JordanMap.identity(A))
    corner = A.embed(0, np.diag([1, 0]))
    fake = ThomsenDecomposition(corner, A.identity() - corner, A.zero(), dec.labels)
    rep = verify_centrality(fake)
    assert not rep.passed
    assert rep.witness["projection"] == "p1"
