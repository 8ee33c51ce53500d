"""Dense complex linear algebra helpers.

Thin wrappers around numpy that fix the conventions used everywhere else:
complex128 storage, Hilbert-Schmidt inner products, normalized traces.
"""

import numpy as np

__all__ = [
    "as_matrix",
    "kron",
    "commutator",
    "normalized_trace",
    "hs_inner",
    "frobenius_norm",
    "is_square",
]


class ShapeError(ValueError):
    """Raised when operand dimensions do not match an operation's contract."""


def as_matrix(a):
    """Coerce input to a 2-d complex128 ndarray."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError("expected a 2-d array, got ndim=%d" % m.ndim)
    return m


def is_square(a):
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1]


def kron(a, b):
    """Kronecker product with complex128 output."""
    return np.kron(as_matrix(a), as_matrix(b))


def commutator(a, b):
    """[a, b] = ab - ba for square matrices of equal dimension."""
    a = as_matrix(a)
    b = as_matrix(b)
    if not (is_square(a) and is_square(b) and a.shape == b.shape):
        raise ShapeError(
            "commutator needs equal square shapes, got %s and %s" % (a.shape, b.shape)
        )
    return a @ b - b @ a


def normalized_trace(a):
    """(1/N) tr a for a square N x N matrix."""
    a = as_matrix(a)
    if not is_square(a):
        raise ShapeError("normalized_trace needs a square matrix, got %s" % (a.shape,))
    return complex(np.trace(a)) / a.shape[0]


def hs_inner(a, b):
    """Hilbert-Schmidt inner product tr(a^dagger b)."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError("hs_inner needs equal shapes, got %s and %s" % (a.shape, b.shape))
    return complex(np.sum(np.conj(a) * b))


def frobenius_norm(a):
    return float(np.linalg.norm(as_matrix(a)))
