"""Dense complex matrix arithmetic and the scalar statistics behind the bounds.

Matrices are numpy ``complex128`` arrays in row-major order.  The
:func:`dense_matrix` constructor is the validation gate: everything entering
the library from outside (files, CLI literals, generators) passes through it,
after which operations may assume square, finite input.  All operations are
pure; none mutates its arguments.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "dense_matrix",
    "identity",
    "adjoint",
    "conjugate",
    "trace",
    "frobenius_norm_sq",
    "frobenius_norm",
    "multiply",
    "linear_combine",
    "hermitian_real_part",
    "hermitian_imag_part",
    "commutator_defect",
]


def dense_matrix(entries) -> np.ndarray:
    """Validate ``entries`` as an n-by-n complex matrix and return it frozen.

    Rejects non-square shapes and non-finite values: every downstream
    inequality check is meaningless on NaN/Inf data, so they are refused at
    construction instead of propagated.
    """
    a = np.array(entries, dtype=np.complex128, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("matrix dimension must be at least 1")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    a.setflags(write=False)
    return a


def identity(n: int) -> np.ndarray:
    """n-by-n complex identity."""
    return np.eye(n, dtype=np.complex128)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def conjugate(a: np.ndarray) -> np.ndarray:
    """Entrywise complex conjugate."""
    return a.conj()


def trace(a: np.ndarray) -> complex:
    """Sum of diagonal entries."""
    return complex(np.trace(a))


def frobenius_norm_sq(a: np.ndarray) -> float:
    """Sum of squared entry moduli, computed directly from the entries.

    Deliberately not routed through ``trace(a @ adjoint(a))``; that identity
    is checked against this function in the test suite.
    """
    return float((a.real * a.real + a.imag * a.imag).sum())


def frobenius_norm(a: np.ndarray) -> float:
    """Square root of :func:`frobenius_norm_sq`."""
    return float(np.sqrt(frobenius_norm_sq(a)))


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def linear_combine(alpha: complex, a: np.ndarray, beta: complex, b: np.ndarray) -> np.ndarray:
    """Entrywise alpha*a + beta*b."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return alpha * a + beta * b


def hermitian_real_part(a: np.ndarray) -> np.ndarray:
    """(A + A*)/2; Hermitian by construction."""
    return (a + a.conj().T) / 2.0


def hermitian_imag_part(a: np.ndarray) -> np.ndarray:
    """(A - A*)/(2i); Hermitian by construction, and A = Re + i*Im."""
    return (a - a.conj().T) / 2.0j


def commutator_defect(a: np.ndarray) -> float:
    """||A A* - A* A||_F^2 / 2, the departure-from-normality measure.

    Zero exactly when A is normal.  Computed from the explicit products so
    this module stays independent of any eigensolver.
    """
    ah = a.conj().T
    c = a @ ah - ah @ a
    return float((c.real * c.real + c.imag * c.imag).sum()) / 2.0
