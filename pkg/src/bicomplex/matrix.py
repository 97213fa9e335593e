"""Dense square matrices over the bicomplex ring.

A matrix A splits entrywise along the idempotents as A = A1*e1 + A2*e2
with A1, A2 complex matrices, and determinant, singularity and inverse
all reduce to the two components:

    det(A) = det(A1)*e1 + det(A2)*e2,
    A**-1  = inv(A1)*e1 + inv(A2)*e2   (defined iff det(A) is invertible).

A matrix is singular when its determinant lies in the null cone, i.e.
when at least one component determinant vanishes.  Storage is the
canonical (z1, z2) pair of complex arrays; the component view is
derived.  Matrices are immutable and all operations are pure.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .core import (
    DEFAULT_TOLERANCE,
    Bicomplex,
    BicomplexError,
    Classification,
    DimensionMismatch,
    Tolerance,
    as_bicomplex,
)


class SingularMatrix(BicomplexError):
    """Raised when a matrix with a null-cone (or zero) determinant is inverted.

    ``components`` lists the idempotent components whose determinant
    vanished: (1,), (2,) or (1, 2).
    """

    def __init__(self, components: tuple[int, ...]):
        labels = " and ".join(str(k) for k in components)
        super().__init__(f"matrix is singular: component {labels} determinant vanishes")
        self.components = components


class MatrixInverse(NamedTuple):
    """Inverse matrix together with the two component condition estimates."""

    matrix: "BicomplexMatrix"
    cond1: float
    cond2: float


class BicomplexMatrix:
    """An n-by-n array of bicomplex entries."""

    __slots__ = ("z1", "z2")

    def __init__(self, z1: np.ndarray, z2: np.ndarray):
        z1 = np.array(z1, dtype=complex)
        z2 = np.array(z2, dtype=complex)
        if z1.ndim != 2 or z1.shape[0] != z1.shape[1] or z1.shape[0] == 0:
            raise ValueError(f"expected a nonempty square array, got shape {z1.shape}")
        if z1.shape != z2.shape:
            raise ValueError(f"part shapes differ: {z1.shape} vs {z2.shape}")
        if not (np.isfinite(z1).all() and np.isfinite(z2).all()):
            raise ValueError("matrix entries must be finite")
        z1.setflags(write=False)
        z2.setflags(write=False)
        self.z1 = z1
        self.z2 = z2

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence]) -> BicomplexMatrix:
        entries = [[as_bicomplex(value) for value in row] for row in rows]
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("rows must all have length equal to the row count")
        z1 = np.array([[w.z1 for w in row] for row in entries], dtype=complex)
        z2 = np.array([[w.z2 for w in row] for row in entries], dtype=complex)
        return cls(z1, z2)

    @classmethod
    def from_components(cls, c1: np.ndarray, c2: np.ndarray) -> BicomplexMatrix:
        """Recombine the idempotent component matrices c1*e1 + c2*e2."""
        c1 = np.asarray(c1, dtype=complex)
        c2 = np.asarray(c2, dtype=complex)
        return cls(0.5 * (c1 + c2), 0.5j * (c1 - c2))

    @classmethod
    def identity(cls, n: int) -> BicomplexMatrix:
        return cls(np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex))

    @classmethod
    def zeros(cls, n: int) -> BicomplexMatrix:
        return cls(np.zeros((n, n), dtype=complex), np.zeros((n, n), dtype=complex))

    @classmethod
    def diagonal(cls, values: Sequence) -> BicomplexMatrix:
        values = [as_bicomplex(v) for v in values]
        z1 = np.diag([w.z1 for w in values]).astype(complex)
        z2 = np.diag([w.z2 for w in values]).astype(complex)
        return cls(z1, z2)

    # -- views -----------------------------------------------------------

    @property
    def order(self) -> int:
        return self.z1.shape[0]

    def entry(self, i: int, j: int) -> Bicomplex:
        return Bicomplex(self.z1[i, j], self.z2[i, j])

    def component(self, k: int) -> np.ndarray:
        """The complex component matrix multiplying e1 (k=1) or e2 (k=2)."""
        if k == 1:
            return self.z1 - 1j * self.z2
        if k == 2:
            return self.z1 + 1j * self.z2
        raise ValueError(f"component index must be 1 or 2, got {k!r}")

    def transpose(self) -> BicomplexMatrix:
        return BicomplexMatrix(self.z1.T.copy(), self.z2.T.copy())

    def max_norm(self) -> float:
        """Largest entrywise Euclidean norm."""
        return float(np.sqrt(np.abs(self.z1) ** 2 + np.abs(self.z2) ** 2).max())

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BicomplexMatrix):
            return NotImplemented
        self._check_order(other)
        return BicomplexMatrix(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other):
        if not isinstance(other, BicomplexMatrix):
            return NotImplemented
        self._check_order(other)
        return BicomplexMatrix(self.z1 - other.z1, self.z2 - other.z2)

    def __neg__(self):
        return BicomplexMatrix(-self.z1, -self.z2)

    def scale(self, factor) -> BicomplexMatrix:
        """Multiply every entry by a bicomplex (or scalar) factor."""
        w = as_bicomplex(factor)
        return BicomplexMatrix(
            w.z1 * self.z1 - w.z2 * self.z2,
            w.z1 * self.z2 + w.z2 * self.z1,
        )

    def __mul__(self, factor):
        if isinstance(factor, (int, float, complex, Bicomplex)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, BicomplexMatrix):
            return NotImplemented
        self._check_order(other)
        return BicomplexMatrix(
            self.z1 @ other.z1 - self.z2 @ other.z2,
            self.z1 @ other.z2 + self.z2 @ other.z1,
        )

    def matvec(self, z1: np.ndarray, z2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Apply to a coefficient vector given as its (z1, z2) parts."""
        if z1.shape != (self.order,):
            raise DimensionMismatch(f"vector length {z1.shape[0]} != order {self.order}")
        return self.z1 @ z1 - self.z2 @ z2, self.z1 @ z2 + self.z2 @ z1

    def __eq__(self, other):
        if not isinstance(other, BicomplexMatrix):
            return NotImplemented
        return np.array_equal(self.z1, other.z1) and np.array_equal(self.z2, other.z2)

    def __repr__(self):
        return f"BicomplexMatrix(order={self.order})"

    def _check_order(self, other: BicomplexMatrix):
        if self.order != other.order:
            raise DimensionMismatch(f"orders differ: {self.order} vs {other.order}")

    # -- determinant and inverse --------------------------------------------

    def det(self) -> Bicomplex:
        """Determinant via the component determinants (LU under the hood)."""
        d1 = complex(np.linalg.det(self.component(1)))
        d2 = complex(np.linalg.det(self.component(2)))
        return Bicomplex.from_idempotent(d1, d2)

    def is_singular(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        return self.det().classify(tol) is not Classification.INVERTIBLE

    def inverse(self, tol: Tolerance = DEFAULT_TOLERANCE) -> MatrixInverse:
        """Componentwise inverse, plus condition estimates for both components.

        The residual of A @ inv(A) scales with the reported conditions;
        callers decide how much accuracy to expect.
        """
        classification = self.det().classify(tol)
        if classification is Classification.ZERO:
            raise SingularMatrix((1, 2))
        if classification is Classification.NULL_CONE_1:
            raise SingularMatrix((1,))
        if classification is Classification.NULL_CONE_2:
            raise SingularMatrix((2,))
        c1 = self.component(1)
        c2 = self.component(2)
        inverse = BicomplexMatrix.from_components(np.linalg.inv(c1), np.linalg.inv(c2))
        return MatrixInverse(inverse, float(np.linalg.cond(c1)), float(np.linalg.cond(c2)))


def matmul(a: BicomplexMatrix, b: BicomplexMatrix) -> BicomplexMatrix:
    return a @ b
