"""Dense complex-matrix primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every function
here returns a fresh array and never mutates its input.
"""

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, InputError, NotHermitian, ParseError

#: Max entrywise deviation from self-adjointness accepted as hermitian.
TOL_HERM = 1e-10
#: Relative singular-value cutoff for every rank decision.
RANK_RTOL = 1e-10


def as_matrix(m, square=False) -> np.ndarray:
    """Copy ``m`` into a 2-d complex array, rejecting NaN/Inf."""
    out = np.array(m, dtype=complex, copy=True)
    if out.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {out.shape}")
    if square and out.shape[0] != out.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise InputError("matrix entries must be finite")
    return out


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(m)).T.copy()


def hermiticity_defect(m) -> float:
    """Largest entrywise deviation of ``m`` from its adjoint."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - np.conj(m).T)))


def is_hermitian(m, tol=TOL_HERM) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and hermiticity_defect(m) <= tol


def hermitian_eig(m, tol=TOL_HERM):
    """Eigendecomposition of a self-adjoint matrix.

    Returns:
        ``(eigenvalues, eigenvectors)`` with real eigenvalues in ascending
        order and orthonormal eigenvectors as columns.

    Raises:
        NotHermitian: if ``m`` deviates from its adjoint by more than ``tol``.
    """
    m = as_matrix(m, square=True)
    if hermiticity_defect(m) > tol:
        raise NotHermitian(f"matrix deviates from its adjoint by {hermiticity_defect(m):.3e}")
    # LAPACK heevd is deterministic for fixed input
    w, v = np.linalg.eigh(0.5 * (m + adjoint(m)))
    return w, v


def orthonormal_span(vectors, rtol=RANK_RTOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the span of the given columns."""
    vectors = np.asarray(vectors, dtype=complex)
    if vectors.size == 0:
        return np.zeros((vectors.shape[0], 0), dtype=complex)
    return scipy.linalg.orth(vectors, rcond=rtol)


def kernel_projection(ms, n, rtol=RANK_RTOL) -> np.ndarray:
    """Orthogonal projection onto the joint kernel of a list of n x n matrices.

    An empty list has the whole space as joint kernel, so the identity is
    returned.
    """
    ms = [np.asarray(m, dtype=complex) for m in ms]
    for m in ms:
        if m.shape != (n, n):
            raise DimensionMismatch(f"expected {n}x{n} matrices, got {m.shape}")
    if not ms:
        return np.eye(n, dtype=complex)
    stacked = np.vstack(ms)
    basis = scipy.linalg.null_space(stacked, rcond=rtol)
    return basis @ adjoint(basis)


def range_projection(m, rtol=RANK_RTOL) -> np.ndarray:
    """Orthogonal projection onto the column space of a square matrix."""
    m = as_matrix(m, square=True)
    basis = scipy.linalg.orth(m, rcond=rtol)
    return basis @ adjoint(basis)


def trace_norm(m) -> float:
    """Sum of singular values."""
    m = as_matrix(m, square=True)
    if m.size == 0:
        return 0.0
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def operator_norm(m) -> float:
    """Largest singular value."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(x) for x in m.real.ravel()],
        "im": [float(x) for x in m.imag.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", [0.0] * (rows * cols)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix object: {exc}") from exc
    if rows < 0 or cols < 0 or re.shape != (rows * cols,) or im.shape != (rows * cols,):
        raise ParseError(f"matrix payload does not match declared shape {rows}x{cols}")
    m = (re + 1j * im).reshape(rows, cols)
    if not np.all(np.isfinite(m)):
        raise ParseError("matrix entries must be finite")
    return m
