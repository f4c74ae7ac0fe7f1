import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordansym import matrixcore as mc
from jordansym.errors import DimensionMismatch, InputError, NotHermitian, ParseError

from conftest import seeds


def _random_matrix(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def test_adjoint_examples(rng):
    np.testing.assert_array_equal(mc.adjoint([[0, 1], [0, 0]]), [[0, 0], [1, 0]])
    np.testing.assert_array_equal(mc.adjoint([[1j]]), [[-1j]])
    m = _random_matrix(rng, 4, 3)
    np.testing.assert_array_equal(mc.adjoint(mc.adjoint(m)), m)


def test_non_finite_rejected():
    with pytest.raises(InputError):
        mc.as_matrix([[np.nan, 0], [0, 1]])
    with pytest.raises(DimensionMismatch):
        mc.as_matrix([1, 2, 3])


def test_hermitian_eig_examples():
    w, _ = mc.hermitian_eig(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(w, [1, 3])
    w, _ = mc.hermitian_eig([[0, 1], [1, 0]])
    np.testing.assert_allclose(w, [-1, 1], atol=1e-15)
    w, _ = mc.hermitian_eig(np.eye(4))
    np.testing.assert_allclose(w, np.ones(4))


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        mc.hermitian_eig([[0, 1], [0, 0]])


@given(seeds, st.integers(1, 8))
def test_hermitian_eig_residuals(seed, n):
    rng = np.random.default_rng(seed)
    g = _random_matrix(rng, n)
    h = g + mc.adjoint(g)
    w, v = mc.hermitian_eig(h)
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.linalg.norm(h @ v - v * w, axis=0)) < 1e-9
    assert np.linalg.norm(mc.adjoint(v) @ v - np.eye(n)) < 1e-9


def test_hermitian_eig_deterministic(rng):
    g = _random_matrix(rng, 6)
    h = g + mc.adjoint(g)
    a, b = mc.hermitian_eig(h), mc.hermitian_eig(h.copy())
    np.testing.assert_array_equal(a[0], b[0])
    np.testing.assert_array_equal(a[1], b[1])


def test_kernel_projection_examples():
    np.testing.assert_allclose(mc.kernel_projection([], 3), np.eye(3))
    np.testing.assert_allclose(mc.kernel_projection([np.diag([1, 0])], 2), np.diag([0, 1]), atol=1e-15)
    np.testing.assert_allclose(mc.kernel_projection([np.diag([1, 0]), np.diag([0, 1])], 2),
                               np.zeros((2, 2)), atol=1e-15)
    with pytest.raises(DimensionMismatch):
        mc.kernel_projection([np.eye(3)], 2)


@given(seeds, st.integers(2, 6), st.integers(1, 3))
def test_kernel_projection_invariants(seed, n, k):
    rng = np.random.default_rng(seed)
    # rank-deficient inputs so the joint kernel is usually nontrivial
    ms = [_random_matrix(rng, n, 1) @ _random_matrix(rng, 1, n) for _ in range(k)]
    q = mc.kernel_projection(ms, n)
    assert np.linalg.norm(q @ q - q) < 1e-9
    assert np.linalg.norm(q - mc.adjoint(q)) < 1e-9
    assert max(np.linalg.norm(m @ q) for m in ms) < 1e-8
    assert abs(np.trace(q).real - max(n - k, 0)) < 1e-8


def test_range_projection_examples(rng):
    np.testing.assert_allclose(mc.range_projection(np.zeros((3, 3))), np.zeros((3, 3)))
    np.testing.assert_allclose(mc.range_projection(_random_matrix(rng, 3)), np.eye(3), atol=1e-12)
    np.testing.assert_allclose(mc.range_projection([[1, 0], [0, 0]]), np.diag([1, 0]), atol=1e-15)


@given(seeds, st.integers(1, 6))
def test_range_projection_fixes_columns(seed, n):
    rng = np.random.default_rng(seed)
    m = _random_matrix(rng, n, 2) @ _random_matrix(rng, 2, n)
    p = mc.range_projection(m)
    assert np.linalg.norm(p @ m - m) < 1e-9


def test_trace_norm_examples():
    assert mc.trace_norm(np.diag([1, -1])) == pytest.approx(2)
    psi = np.array([1, 1j, 0]) / np.sqrt(2)
    assert mc.trace_norm(np.outer(psi, psi.conj())) == pytest.approx(1)
    assert mc.trace_norm(np.zeros((2, 2))) == 0


@given(seeds, st.integers(2, 6))
def test_trace_norm_pure_difference(seed, n):
    # oracle: eigenvalues +-sqrt(1 - t) of the difference on span{psi, phi}
    rng = np.random.default_rng(seed)
    psi, phi = (_random_matrix(rng, n, 1).ravel() for _ in range(2))
    psi, phi = psi / np.linalg.norm(psi), phi / np.linalg.norm(phi)
    t = abs(np.vdot(psi, phi)) ** 2
    d = np.outer(psi, psi.conj()) - np.outer(phi, phi.conj())
    assert abs(mc.trace_norm(d) - 2 * np.sqrt(1 - t)) < 1e-8


@given(seeds, st.integers(1, 6))
def test_norm_inequalities(seed, n):
    rng = np.random.default_rng(seed)
    a, b = _random_matrix(rng, n), _random_matrix(rng, n)
    assert mc.trace_norm(a + b) <= mc.trace_norm(a) + mc.trace_norm(b) + 1e-9
    assert mc.operator_norm(a @ b) <= mc.operator_norm(a) * mc.operator_norm(b) + 1e-9


def test_operator_norm_examples(rng):
    assert mc.operator_norm(np.eye(3)) == pytest.approx(1)
    assert mc.operator_norm(np.diag([2, 1])) == pytest.approx(2)
    q, _ = np.linalg.qr(_random_matrix(rng, 4))
    assert abs(mc.operator_norm(q) - 1) < 1e-12


def test_matrix_json_roundtrip(rng):
    m = _random_matrix(rng, 2, 3)
    obj = mc.matrix_to_json(m)
    assert obj["rows"] == 2 and obj["cols"] == 3 and len(obj["re"]) == 6
    np.testing.assert_array_equal(mc.matrix_from_json(obj), m)


@pytest.mark.parametrize("obj", [
    {"rows": 2, "cols": 2, "re": [1, 2, 3]},
    {"rows": 1, "cols": 1},
    {"rows": 1, "cols": 1, "re": ["x"]},
    {"rows": 1, "cols": 1, "re": [float("inf")]},
    [1, 2],
])
def test_matrix_json_rejects_garbage(obj):
    with pytest.raises(ParseError):
        mc.matrix_from_json(obj)
