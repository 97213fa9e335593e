"""Cyclic Jacobi diagonalization for complex Hermitian matrices.

One rotation zeroes the pivot pair (p, q): with the pivot written as
a[p, q] = |b| * exp(i*phi), the 2x2 unitary

    [[c, -conj(m)],
     [m,  c]],        m = s * exp(-i*phi),  c**2 + s**2 = 1,

annihilates the off-diagonal entry when t = s/c solves
t**2 - 2*tau*t - 1 = 0 for tau = (a[q, q] - a[p, p]) / (2*|b|).  The
smaller root, evaluated as -sign(tau)/(|tau| + sqrt(tau**2 + 1)) to
avoid cancellation at large tau, keeps the angle below pi/4.  Sweeping
all pairs cyclically converges quadratically; accumulated rotations
stay unitary, so eigenvectors of degenerate clusters come out
orthonormal for free.

For normal (e.g. unitary) matrices the Hermitian and anti-Hermitian
parts commute, and a joint Jacobi sweep over the pair (the
Cardoso-Souloumiac rotation, which minimizes the combined off-diagonal
mass) recovers a common eigenbasis without the near-degeneracy traps of
diagonalizing the parts one after the other.
"""

from __future__ import annotations

import math

import numpy as np

from .core import BicomplexError

OFF_DIAGONAL_TOL = 1e-13
MAX_SWEEPS = 30


class NoConvergence(BicomplexError):
    """Raised when the sweep cap is hit before the off-diagonal dies."""


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off, "fro"))


def _apply_rotation(matrices: list[np.ndarray], vectors: np.ndarray, p: int, q: int,
                    c: float, m: complex) -> None:
    """Two-sided update A <- J^H A J and V <- V J for J = [[c, -conj(m)], [m, c]]."""
    for a in matrices:
        col_p = a[:, p].copy()
        col_q = a[:, q].copy()
        a[:, p] = c * col_p + m * col_q
        a[:, q] = -np.conj(m) * col_p + c * col_q
        row_p = a[p, :].copy()
        row_q = a[q, :].copy()
        a[p, :] = c * row_p + np.conj(m) * row_q
        a[q, :] = -m * row_p + c * row_q
    col_p = vectors[:, p].copy()
    col_q = vectors[:, q].copy()
    vectors[:, p] = c * col_p + m * col_q
    vectors[:, q] = -np.conj(m) * col_p + c * col_q


def jacobi_hermitian(
    matrix: np.ndarray,
    off_tol: float = OFF_DIAGONAL_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a complex Hermitian matrix.

    Returns (values, vectors): the final diagonal (complex; imaginary
    parts are rounding residue) and a unitary matrix whose columns are
    the eigenvectors, both in unsorted pivot order.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    vectors = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(a, "fro"))
    if scale == 0.0 or n == 1:
        return np.diag(a).copy(), vectors

    for _ in range(max_sweeps):
        if _off_norm(a) <= off_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                pivot = a[p, q]
                magnitude = abs(pivot)
                if magnitude == 0.0:
                    continue
                phase = pivot / magnitude
                tau = (a[q, q].real - a[p, p].real) / (2.0 * magnitude)
                t = -math.copysign(1.0, tau) / (abs(tau) + math.sqrt(tau * tau + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                m = (t * c) * phase.conjugate()
                _apply_rotation([a], vectors, p, q, c, m)
                a[p, q] = 0.0
                a[q, p] = 0.0
    else:
        raise NoConvergence(f"Jacobi sweeps exceeded {max_sweeps} without converging")

    return np.diag(a).copy(), vectors


def joint_diagonalize_hermitian(
    first: np.ndarray,
    second: np.ndarray,
    off_tol: float = OFF_DIAGONAL_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Jointly diagonalize two commuting Hermitian matrices.

    Each rotation takes the angle maximizing the summed diagonal mass of
    both matrices: for Hermitian pivots the real 3-vector
    h = (a_pp - a_qq, 2 Re a_pq, 2 Im a_pq) per matrix feeds a 3x3 Gram
    matrix whose top eigenvector (x, y, z), normalized with x >= 0,
    yields c = sqrt((1 + x)/2) and m = (y - i z)/(2 c).

    Returns (diag_first, diag_second, vectors).
    """
    a = np.array(first, dtype=complex)
    b = np.array(second, dtype=complex)
    n = a.shape[0]
    vectors = np.eye(n, dtype=complex)
    scale = max(float(np.linalg.norm(a, "fro")), float(np.linalg.norm(b, "fro")))
    if scale == 0.0 or n == 1:
        return np.diag(a).copy(), np.diag(b).copy(), vectors

    for _ in range(max_sweeps):
        if math.hypot(_off_norm(a), _off_norm(b)) <= off_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                rows = []
                for mat in (a, b):
                    rows.append(
                        [
                            mat[p, p].real - mat[q, q].real,
                            2.0 * mat[p, q].real,
                            2.0 * mat[p, q].imag,
                        ]
                    )
                gram = np.array(rows).T @ np.array(rows)
                eigvals, eigvecs = np.linalg.eigh(gram)
                x, y, z = eigvecs[:, -1]
                if x < 0.0:
                    x, y, z = -x, -y, -z
                c = math.sqrt(0.5 * (1.0 + x))
                if c == 0.0:
                    continue
                m = complex(y, -z) / (2.0 * c)
                if abs(m) <= 1e-18:
                    continue
                _apply_rotation([a, b], vectors, p, q, c, m)
    else:
        raise NoConvergence(
            f"joint Jacobi exceeded {max_sweeps} sweeps; matrices may not commute"
        )

    return np.diag(a).copy(), np.diag(b).copy(), vectors


def diagonalize_normal(
    matrix: np.ndarray,
    off_tol: float = OFF_DIAGONAL_TOL,
) -> tuple[np.ndarray, np.ndarray]:
    """Unitarily diagonalize a normal matrix (unitary matrices included).

    Splits the input into commuting Hermitian and anti-Hermitian parts
    and diagonalizes them jointly.  Raises if the input was not normal
    enough for a common eigenbasis to exist.
    """
    a = np.asarray(matrix, dtype=complex)
    hermitian_part = 0.5 * (a + a.conj().T)
    skew_part = -0.5j * (a - a.conj().T)
    scale = max(float(np.linalg.norm(a, "fro")), 1e-300)

    real_diag, imag_diag, vectors = joint_diagonalize_hermitian(
        hermitian_part, skew_part, off_tol
    )
    transformed = vectors.conj().T @ a @ vectors
    values = np.diag(transformed).copy()
    residual = _off_norm(transformed)
    if residual > 1e-10 * scale:
        raise NoConvergence(
            f"matrix is not normal: off-diagonal residual {residual:.3e} after reduction"
        )
    return values, vectors
