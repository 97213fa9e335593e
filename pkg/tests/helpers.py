"""Shared random generators for the test suite.

Everything takes an explicit numpy Generator so tests stay reproducible
under their own seeds.
"""

from __future__ import annotations

import numpy as np

from bicomplex import Bicomplex, BicomplexMatrix, Ket, Operator, ScalarProductSpec


def random_bicomplex(rng, scale: float = 1.0) -> Bicomplex:
    a, b, c, d = rng.standard_normal(4) * scale
    return Bicomplex(complex(a, b), complex(c, d))


def random_matrix(rng, n: int, scale: float = 1.0) -> BicomplexMatrix:
    z1 = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * scale
    z2 = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * scale
    return BicomplexMatrix(z1, z2)


def random_well_conditioned(rng, n: int, cond_cap: float = 100.0) -> BicomplexMatrix:
    while True:
        matrix = random_matrix(rng, n)
        conds = [np.linalg.cond(matrix.component(k)) for k in (1, 2)]
        if max(conds) <= cond_cap:
            return matrix


def random_hermitian(rng, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def hermitize(g: np.ndarray) -> np.ndarray:
    """Make a matrix bitwise Hermitian (survives text round-trips)."""
    return 0.5 * (g + g.conj().T)


def random_spd(rng, n: int) -> np.ndarray:
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return hermitize(b.conj().T @ b + n * np.eye(n))


def random_spec(rng, n: int) -> ScalarProductSpec:
    return ScalarProductSpec(random_spd(rng, n), random_spd(rng, n))


def random_self_adjoint(rng, n: int, basis_id: str = "canonical") -> Operator:
    """Self-adjoint under the identity spec: both components Hermitian."""
    return Operator(
        BicomplexMatrix.from_components(random_hermitian(rng, n), random_hermitian(rng, n)),
        basis_id,
    )


def random_ket(rng, n: int, basis_id: str = "canonical") -> Ket:
    z1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    z2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return Ket(z1, z2, basis_id)


def random_basis_kets(rng, n: int, basis_id: str = "canonical") -> list[Ket]:
    from bicomplex.hilbert import coefficient_matrix

    while True:
        kets = [random_ket(rng, n, basis_id) for _ in range(n)]
        if not coefficient_matrix(kets).is_singular():
            return kets
