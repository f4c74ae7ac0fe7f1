import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordansym import (BlockAlgebra, CanonicalForm, ImplementingOperator, JordanMap, Label,
                       extract_unitary, phase_distance, verify_implementation)
from jordansym.errors import FlagMismatch, KindMismatch, NotValidated
from jordansym.extraction import canonical_phase
from jordansym.rand import random_canonical_form, random_unitary, random_vector

from conftest import seeds


def single_block(u, anti=False):
    A = BlockAlgebra((len(u),))
    return CanonicalForm(A, (0,), (u,), (anti,)).jordan()


def test_identity_gives_identity():
    op = extract_unitary(JordanMap.identity(BlockAlgebra((3,))), 0)
    assert not op.antiunitary
    np.testing.assert_allclose(op.u, np.eye(3), atol=1e-12)


def test_diagonal_phase_example():
    u0 = np.diag([1, 1j])
    op = extract_unitary(single_block(u0), 0, kind="HOM")
    assert phase_distance(op, ImplementingOperator(0, u0, False)) < 1e-8


def test_transpose_is_antiunitary():
    J = single_block(np.eye(2), anti=True)
    op = extract_unitary(J, 0)
    assert op.antiunitary
    assert verify_implementation(J, op).max_residual < 1e-8
    with pytest.raises(KindMismatch):
        extract_unitary(J, 0, kind=Label.HOM)


def test_one_by_one_block():
    A = BlockAlgebra((2, 1))
    op = extract_unitary(JordanMap.identity(A), 1)
    np.testing.assert_allclose(op.u, [[1]])
    assert not op.antiunitary
    with pytest.raises(KindMismatch):
        extract_unitary(JordanMap.identity(A), 1, kind="BOTH")


def test_requires_validated():
    with pytest.raises(NotValidated):
        extract_unitary(JordanMap(BlockAlgebra((2,)), 2 * np.eye(4)), 0)


@given(seeds, st.sampled_from([2, 3, 5]), st.booleans())
def test_round_trip(seed, n, anti):
    rng = np.random.default_rng(seed)
    u = random_unitary(n, rng)
    J = single_block(u, anti)
    op = extract_unitary(J, 0)
    assert op.antiunitary == anti
    assert phase_distance(op, ImplementingOperator(0, u, anti)) < 1e-8
    assert verify_implementation(J, op).passed
    assert np.linalg.norm(op.u.conj().T @ op.u - np.eye(n)) < 1e-9


@given(seeds)
def test_canonical_phase_convention(seed):
    rng = np.random.default_rng(seed)
    op = extract_unitary(single_block(random_unitary(3, rng)), 0)
    col = op.u[:, 0]
    first = col[np.argmax(np.abs(col) > 1e-8)]
    assert abs(first.imag) < 1e-12 and first.real > 0


def test_canonical_phase_skips_tiny_entries():
    u = np.array([[0, 1j], [1j, 0]])
    v = canonical_phase(u)
    assert v[1, 0] == pytest.approx(1)


@given(seeds, st.booleans())
def test_choice_of_reference_vector(seed, anti):
    # different reference vectors give the same operator up to phase
    rng = np.random.default_rng(seed)
    J = single_block(random_unitary(4, rng), anti)
    a = extract_unitary(J, 0)
    b = extract_unitary(J, 0, chi=random_vector(4, rng))
    assert phase_distance(a, b) < 1e-8


@given(seeds)
def test_composition(seed):
    rng = np.random.default_rng(seed)
    u1, u2 = random_unitary(3, rng), random_unitary(3, rng)
    J = single_block(u1).compose(single_block(u2))
    op = extract_unitary(J, 0)
    assert phase_distance(op, ImplementingOperator(0, u2 @ u1, False)) < 1e-8


@given(seeds)
def test_isometry_chain(seed):
    rng = np.random.default_rng(seed)
    A = BlockAlgebra((3,))
    J = single_block(random_unitary(3, rng))
    op = extract_unitary(J, 0)
    chi = np.eye(3)[0]
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    v = J(A.embed(0, a)).blocks[0] @ chi
    assert abs(np.linalg.norm(op.u @ v) - np.linalg.norm(v)) < 1e-10


def test_multi_block_with_permutation(rng):
    A = BlockAlgebra((2, 3, 2))
    form = random_canonical_form(A, rng)
    J = form.jordan()
    for i, n in enumerate(A.dims):
        op = extract_unitary(J, i)
        assert op.antiunitary == form.antiunitary[i]
        assert phase_distance(op, ImplementingOperator(i, form.unitaries[i], op.antiunitary)) < 1e-8


def test_verification_controls(rng):
    u = random_unitary(3, rng)
    J = single_block(u)
    good = ImplementingOperator(0, u, False)
    assert verify_implementation(J, good).passed
    assert verify_implementation(J, ImplementingOperator(0, 1j * u, False)).passed
    rep = verify_implementation(J, ImplementingOperator(0, u, True))
    assert not rep.passed and rep.max_residual > 1e-2 and rep.witness is not None


def test_phase_distance_examples(rng):
    u, v = random_unitary(3, rng), random_unitary(3, rng)
    op = ImplementingOperator(0, u, False)
    assert phase_distance(op, op) < 1e-12
    assert phase_distance(op, ImplementingOperator(0, 1j * u, False)) < 1e-12
    assert phase_distance(op, ImplementingOperator(0, v, False)) > 0.1
    with pytest.raises(FlagMismatch):
        phase_distance(op, ImplementingOperator(0, u, True))
    with pytest.raises(FlagMismatch):
        phase_distance(op, ImplementingOperator(1, u, False))


def test_operator_json(rng):
    op = extract_unitary(single_block(random_unitary(2, rng), anti=True), 0)
    obj = op.to_json()
    assert obj["phase_convention"] == "first-entry-positive"
    assert obj["antiunitary"] is True and obj["block"] == 0
