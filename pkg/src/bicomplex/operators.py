"""Linear operators on the module: adjoints, spectra, evolution.

An operator is a bicomplex matrix in a declared basis.  Everything
spectral reduces to the two complex component matrices: an operator is
self-adjoint (unitary) exactly when both components are Hermitian
(unitary) with respect to their Gram matrices, eigenvalue problems
decouple into two complex ones, and

    f(A) = f1(A1)*e1 + f2(A2)*e2,    exp(A) = exp(A1)*e1 + exp(A2)*e2.

Self-adjoint operators admit an orthonormal eigenket basis with
hyperbolic eigenvalues and the rank-one expansion
H = sum_l lambda_l |phi_l><phi_l|; exp(i1*H) is unitary, and
U(t, t0) = exp(-i1*(t - t0)*H / hbar) propagates the time-independent
Schroedinger dynamics while conserving every self-product.

Component eigenproblems are solved by cyclic Jacobi rotations (general
Gram matrices are reduced through their Cholesky factors first).  Any
pairing of component eigenpairs is algebraically valid; the canonical
output sorts self-adjoint spectra ascending by real part and unitary
spectra by phase angle, index to index.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._eigen import diagonalize_normal, jacobi_hermitian
from .core import (
    DEFAULT_TOLERANCE,
    Bicomplex,
    BicomplexError,
    Classification,
    DimensionMismatch,
    ONE,
    Tolerance,
    as_bicomplex,
    approx_eq,
)
from .hilbert import BasisMismatch, Ket, ScalarProductSpec, scalar_product
from .matrix import BicomplexMatrix

__all__ = [
    "EigenPair",
    "EvolutionConfig",
    "InvalidXi",
    "NotSelfAdjoint",
    "NotUnitary",
    "Operator",
    "OrthogonalityRecord",
    "OrthogonalityReport",
    "SeriesDivergence",
    "adjoint",
    "compose",
    "conjugate_by_basis",
    "eigendecompose_self_adjoint",
    "eigendecompose_unitary",
    "eigenket_orthogonality_check",
    "evolution_operator",
    "evolve_series",
    "is_self_adjoint",
    "is_unitary",
    "op_exp",
    "op_exp_spectral",
    "op_function",
    "outer_product",
    "schrodinger_residual",
    "spectral_reconstruct",
]

# numerically degenerate eigenvalue clusters are re-orthonormalized below this gap
DEGENERACY_GAP = 1e-8


class NotSelfAdjoint(BicomplexError):
    """Raised when an operation requires a self-adjoint operator."""


class NotUnitary(BicomplexError):
    """Raised when an operation requires a unitary operator."""


class InvalidXi(BicomplexError):
    """Raised for a left-hand constant that is not real-componented and invertible."""


class SeriesDivergence(BicomplexError):
    """Raised when operator series terms fail to decay within the step cap."""


@dataclass(frozen=True)
class Operator:
    """Matrix representation of a linear operator in a labelled basis."""

    matrix: BicomplexMatrix
    basis_id: str = "canonical"

    @property
    def dim(self) -> int:
        return self.matrix.order

    def component(self, k: int) -> np.ndarray:
        return self.matrix.component(k)

    @classmethod
    def identity(cls, dim: int, basis_id: str = "canonical") -> Operator:
        return cls(BicomplexMatrix.identity(dim), basis_id)

    def _check_compatible(self, other: Operator):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions differ: {self.dim} vs {other.dim}")
        if self.basis_id != other.basis_id:
            raise BasisMismatch(f"bases differ: {self.basis_id!r} vs {other.basis_id!r}")

    def __add__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self._check_compatible(other)
        return Operator(self.matrix + other.matrix, self.basis_id)

    def __sub__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self._check_compatible(other)
        return Operator(self.matrix - other.matrix, self.basis_id)

    def __matmul__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return compose(self, other)

    def scale(self, factor) -> Operator:
        return Operator(self.matrix.scale(factor), self.basis_id)

    def __mul__(self, factor):
        if isinstance(factor, (int, float, complex, Bicomplex)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def apply(self, psi: Ket) -> Ket:
        if psi.dim != self.dim:
            raise DimensionMismatch(f"ket dimension {psi.dim} != operator dimension {self.dim}")
        if psi.basis_id != self.basis_id:
            raise BasisMismatch(f"bases differ: {self.basis_id!r} vs {psi.basis_id!r}")
        z1, z2 = self.matrix.matvec(psi.z1, psi.z2)
        return Ket(z1, z2, self.basis_id)


@dataclass(frozen=True)
class EigenPair:
    """An eigenvalue with a (non-null-cone) eigenket."""

    value: Bicomplex
    ket: Ket


def compose(a: Operator, b: Operator) -> Operator:
    """The operator acting as a after b; its matrix is the product."""
    a._check_compatible(b)
    return Operator(a.matrix @ b.matrix, a.basis_id)


def op_project(a: Operator, k: int) -> np.ndarray:
    """Complex component matrix of the e1 (k=1) or e2 (k=2) projection."""
    return a.matrix.component(k)


def conjugate_by_basis(
    a: Operator,
    transform: BicomplexMatrix,
    new_basis_id: str | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Operator:
    """Representation of the same operator in the transform's column basis.

    Column l of the transform expresses new basis ket l in the current
    basis; the matrix becomes inv(L) @ A @ L, leaving the spectrum
    untouched.
    """
    if transform.order != a.dim:
        raise DimensionMismatch(f"transform order {transform.order} != operator dimension {a.dim}")
    inverse = transform.inverse(tol).matrix
    if new_basis_id is None:
        new_basis_id = a.basis_id + "'"
    return Operator(inverse @ a.matrix @ transform, new_basis_id)


def adjoint(spec: ScalarProductSpec, a: Operator) -> Operator:
    """The unique operator with (psi, A phi) = (adjoint(A) psi, phi).

    Componentwise inv(G_k) @ A_k^H @ G_k; for identity Gram matrices
    this is the conjugate transpose.
    """
    if spec.dim != a.dim:
        raise DimensionMismatch(f"spec dimension {spec.dim} != operator dimension {a.dim}")
    parts = []
    for k in (1, 2):
        component = a.matrix.component(k)
        gram = spec.gram(k)
        parts.append(np.linalg.solve(gram, component.conj().T @ gram))
    return Operator(BicomplexMatrix.from_components(parts[0], parts[1]), a.basis_id)


def is_self_adjoint(spec: ScalarProductSpec, a: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    residual = (adjoint(spec, a).matrix - a.matrix).max_norm()
    return residual <= tol.eps_eq * max(1.0, a.matrix.max_norm())


def is_unitary(spec: ScalarProductSpec, a: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    product = compose(adjoint(spec, a), a)
    residual = (product.matrix - BicomplexMatrix.identity(a.dim)).max_norm()
    return residual <= tol.eps_eq * max(1.0, a.matrix.max_norm() ** 2)


def outer_product(spec: ScalarProductSpec, phi: Ket, psi: Ket) -> Operator:
    """The rank-one operator sending chi to (psi, chi) * phi."""
    phi._check_compatible(psi)
    if phi.dim != spec.dim:
        raise DimensionMismatch(f"ket dimension {phi.dim} != spec dimension {spec.dim}")
    parts = [
        np.outer(phi.component(k), np.conj(spec.gram(k) @ psi.component(k)))
        for k in (1, 2)
    ]
    return Operator(BicomplexMatrix.from_components(parts[0], parts[1]), phi.basis_id)


def _reorthonormalize_clusters(values: np.ndarray, vectors: np.ndarray, scale: float) -> None:
    """Gram-Schmidt inside near-degenerate eigenvalue clusters, in place.

    Columns arrive orthonormal from the rotation accumulation; this only
    guards against drift once eigenvalues are too close to separate.
    """
    n = values.shape[0]
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop].real - values[stop - 1].real <= DEGENERACY_GAP * scale:
            stop += 1
        for i in range(start, stop):
            column = vectors[:, i].copy()
            for j in range(start, i):
                column -= np.vdot(vectors[:, j], column) * vectors[:, j]
            vectors[:, i] = column / np.linalg.norm(column)
        start = stop


def _component_hermitian_eigh(
    spec: ScalarProductSpec, matrix: BicomplexMatrix, k: int
) -> tuple[np.ndarray, np.ndarray]:
    """Eigensolve one component, reduced to a standard Hermitian problem.

    With G = L L^H, the matrix B = L^H A L^{-H} is Hermitian whenever A
    is G-self-adjoint, and back-transformed eigenvectors L^{-H} Y are
    G-orthonormal.
    """
    component = matrix.component(k)
    chol = spec.cholesky(k)
    inv_chol_h = np.linalg.inv(chol.conj().T)
    reduced = chol.conj().T @ component @ inv_chol_h
    values, vectors = jacobi_hermitian(reduced)
    order = np.argsort(values.real, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    scale = max(float(np.linalg.norm(reduced, "fro")), 1e-300)
    _reorthonormalize_clusters(values, vectors, scale)
    return values, inv_chol_h @ vectors


def eigendecompose_self_adjoint(
    spec: ScalarProductSpec, h: Operator, tol: Tolerance = DEFAULT_TOLERANCE
) -> list[EigenPair]:
    """Orthonormal eigenkets and hyperbolic eigenvalues of a self-adjoint operator.

    Component eigenvalues are sorted ascending by real part and matched
    index to index; the other pairings are equally valid and reachable
    through basis mixing.
    """
    if not is_self_adjoint(spec, h, tol):
        raise NotSelfAdjoint("operator is not self-adjoint under the given scalar product")
    values1, vectors1 = _component_hermitian_eigh(spec, h.matrix, 1)
    values2, vectors2 = _component_hermitian_eigh(spec, h.matrix, 2)
    return [
        EigenPair(
            Bicomplex.from_idempotent(values1[i], values2[i]),
            Ket.from_components(vectors1[:, i], vectors2[:, i], h.basis_id),
        )
        for i in range(h.dim)
    ]


def eigendecompose_unitary(
    spec: ScalarProductSpec, u: Operator, tol: Tolerance = DEFAULT_TOLERANCE
) -> list[EigenPair]:
    """Orthonormal eigenkets of a unitary operator, sorted by phase angle."""
    if not is_unitary(spec, u, tol):
        raise NotUnitary("operator is not unitary under the given scalar product")
    components = []
    for k in (1, 2):
        chol = spec.cholesky(k)
        inv_chol_h = np.linalg.inv(chol.conj().T)
        reduced = chol.conj().T @ u.matrix.component(k) @ inv_chol_h
        values, vectors = diagonalize_normal(reduced)
        order = np.argsort(np.angle(values), kind="stable")
        components.append((values[order], inv_chol_h @ vectors[:, order]))
    (values1, vectors1), (values2, vectors2) = components
    return [
        EigenPair(
            Bicomplex.from_idempotent(values1[i], values2[i]),
            Ket.from_components(vectors1[:, i], vectors2[:, i], u.basis_id),
        )
        for i in range(u.dim)
    ]


def spectral_reconstruct(spec: ScalarProductSpec, pairs: Sequence[EigenPair]) -> Operator:
    """Rebuild sum_l lambda_l |phi_l><phi_l| from orthonormal eigenpairs."""
    if not pairs:
        raise ValueError("need at least one eigenpair")
    total = outer_product(spec, pairs[0].ket, pairs[0].ket).scale(pairs[0].value)
    for pair in pairs[1:]:
        total = total + outer_product(spec, pair.ket, pair.ket).scale(pair.value)
    return total


@dataclass(frozen=True)
class OrthogonalityRecord:
    """Cross product of one eigenket pair; unconstrained when the
    eigenvalue difference falls in the null cone."""

    first: int
    second: int
    constrained: bool
    residual: float


@dataclass(frozen=True)
class OrthogonalityReport:
    records: tuple[OrthogonalityRecord, ...]
    tolerance: float

    @property
    def max_constrained_residual(self) -> float:
        residuals = [r.residual for r in self.records if r.constrained]
        return max(residuals, default=0.0)

    @property
    def unconstrained_pairs(self) -> list[tuple[int, int]]:
        return [(r.first, r.second) for r in self.records if not r.constrained]

    @property
    def passed(self) -> bool:
        return self.max_constrained_residual <= self.tolerance


def eigenket_orthogonality_check(
    spec: ScalarProductSpec,
    pairs: Sequence[EigenPair],
    residual_tol: float = 1e-10,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> OrthogonalityReport:
    """Verify that eigenkets with invertible eigenvalue gaps are orthogonal.

    Pairs whose eigenvalue difference lies in the null cone carry no
    orthogonality constraint; they are reported but never asserted.
    """
    records = []
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            gap = pairs[i].value - pairs[j].value
            constrained = gap.classify(tol) is Classification.INVERTIBLE
            residual = scalar_product(spec, pairs[i].ket, pairs[j].ket).euclid_norm()
            records.append(OrthogonalityRecord(i, j, constrained, residual))
    return OrthogonalityReport(tuple(records), residual_tol)


# -- operator series and exponential ------------------------------------------


def op_function(
    a: Operator,
    coeffs: Iterable,
    truncation: float = 1e-14,
    max_terms: int = 1000,
) -> Operator:
    """Power series sum_n c_n A^n, summed componentwise.

    The series is truncated once two consecutive terms fall below
    ``truncation`` relative to the running sums in both components (a
    finite coefficient sequence is summed in full).  Terms that fail to
    decay within ``max_terms`` raise SeriesDivergence.
    """
    comp1 = a.matrix.component(1)
    comp2 = a.matrix.component(2)
    n = a.dim
    power1 = np.eye(n, dtype=complex)
    power2 = np.eye(n, dtype=complex)
    total1 = np.zeros((n, n), dtype=complex)
    total2 = np.zeros((n, n), dtype=complex)
    streak = 0
    for index, coeff in enumerate(coeffs):
        if index >= max_terms:
            raise SeriesDivergence(f"series terms did not decay within {max_terms} terms")
        c1, c2 = as_bicomplex(coeff).to_idempotent()
        if index > 0:
            power1 = power1 @ comp1
            power2 = power2 @ comp2
        term1 = c1 * power1
        term2 = c2 * power2
        total1 += term1
        total2 += term2
        term_size = max(np.linalg.norm(term1, 1), np.linalg.norm(term2, 1))
        sum_size = max(np.linalg.norm(total1, 1), np.linalg.norm(total2, 1), 1e-300)
        if term_size <= truncation * sum_size:
            streak += 1
            if streak >= 2 and index >= 1:
                break
        else:
            streak = 0
    return Operator(BicomplexMatrix.from_components(total1, total2), a.basis_id)


def _expm(a: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring exponential with a truncated Taylor core."""
    n = a.shape[0]
    norm = float(np.linalg.norm(a, 1))
    squarings = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    scaled = a / (2.0 ** squarings)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 64):
        term = term @ scaled / k
        result = result + term
        if np.linalg.norm(term, 1) <= 1e-16 * np.linalg.norm(result, 1):
            break
    for _ in range(squarings):
        result = result @ result
    return result


def op_exp(a: Operator) -> Operator:
    """exp(A), computed per component by scaling and squaring."""
    return Operator(
        BicomplexMatrix.from_components(_expm(a.matrix.component(1)), _expm(a.matrix.component(2))),
        a.basis_id,
    )


def _exp_scalar(w: Bicomplex) -> Bicomplex:
    c1, c2 = w.to_idempotent()
    return Bicomplex.from_idempotent(cmath.exp(c1), cmath.exp(c2))


def op_exp_spectral(
    spec: ScalarProductSpec,
    h: Operator,
    prefactor: Bicomplex = ONE,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Operator:
    """exp(prefactor * H) through the eigenket expansion of a self-adjoint H.

    Cross-checks the scaling-and-squaring route; not the default path.
    """
    pairs = eigendecompose_self_adjoint(spec, h, tol)
    scaled = [
        EigenPair(_exp_scalar(prefactor * pair.value), pair.ket) for pair in pairs
    ]
    return spectral_reconstruct(spec, scaled)


# -- evolution ------------------------------------------------------------------


@dataclass(frozen=True)
class EvolutionConfig:
    """Time window, step count and constants for evolving states.

    ``steps`` is the number of sample times in [t0, t1], used both for
    the emitted time series and the finite-difference consistency check.
    ``xi``, when set, multiplies the time derivative and is folded into
    the generator; it must equal its kind-3 conjugate (both idempotent
    components real) and be invertible.
    """

    hbar: float
    t0: float
    t1: float
    steps: int = 100
    xi: Bicomplex | None = None

    def __post_init__(self):
        if not (math.isfinite(self.hbar) and self.hbar > 0.0):
            raise ValueError(f"hbar must be positive and finite, got {self.hbar!r}")
        if not (math.isfinite(self.t0) and math.isfinite(self.t1)):
            raise ValueError("t0 and t1 must be finite")
        if self.steps < 1:
            raise ValueError(f"steps must be at least 1, got {self.steps!r}")
        if self.xi is not None:
            if not approx_eq(self.xi.conjugate(3), self.xi):
                raise InvalidXi("xi must equal its kind-3 conjugate (real idempotent components)")
            if self.xi.classify() is not Classification.INVERTIBLE:
                raise InvalidXi("xi must be invertible")

    def sample_times(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.steps)


def _effective_hamiltonian(cfg: EvolutionConfig, h: Operator) -> Operator:
    """Fold a left-hand constant into the generator: H' = inv(xi) * H."""
    if cfg.xi is None:
        return h
    return h.scale(cfg.xi.inverse())


def _propagator(cfg: EvolutionConfig, h_eff: Operator, elapsed: float) -> Operator:
    return op_exp(h_eff.scale(Bicomplex(complex(0.0, -elapsed / cfg.hbar))))


def evolution_operator(
    cfg: EvolutionConfig,
    h: Operator,
    spec: ScalarProductSpec | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Operator:
    """U(t1, t0) = exp(-i1 (t1 - t0) H / hbar), a unitary propagator."""
    if spec is None:
        spec = ScalarProductSpec.identity(h.dim)
    h_eff = _effective_hamiltonian(cfg, h)
    if not is_self_adjoint(spec, h_eff, tol):
        raise NotSelfAdjoint("effective Hamiltonian is not self-adjoint")
    return _propagator(cfg, h_eff, cfg.t1 - cfg.t0)


def evolve_series(
    cfg: EvolutionConfig,
    h: Operator,
    state: Ket,
    spec: ScalarProductSpec | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> list[tuple[float, Ket]]:
    """The evolved state at each sample time in [t0, t1]."""
    if spec is None:
        spec = ScalarProductSpec.identity(h.dim)
    h_eff = _effective_hamiltonian(cfg, h)
    if not is_self_adjoint(spec, h_eff, tol):
        raise NotSelfAdjoint("effective Hamiltonian is not self-adjoint")
    return [
        (float(t), _propagator(cfg, h_eff, float(t) - cfg.t0).apply(state))
        for t in cfg.sample_times()
    ]


def schrodinger_residual(
    cfg: EvolutionConfig,
    h: Operator,
    state: Ket,
    spec: ScalarProductSpec | None = None,
    step: float = 1e-5,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Largest relative defect of i1 hbar dpsi/dt = H psi along the samples.

    The derivative is a central difference with the given step, so the
    result floors at roughly step**2 plus rounding amplified by 1/step.
    """
    if spec is None:
        spec = ScalarProductSpec.identity(h.dim)
    h_eff = _effective_hamiltonian(cfg, h)
    if not is_self_adjoint(spec, h_eff, tol):
        raise NotSelfAdjoint("effective Hamiltonian is not self-adjoint")
    worst = 0.0
    factor = Bicomplex(complex(0.0, cfg.hbar / (2.0 * step)))
    for t in cfg.sample_times():
        elapsed = float(t) - cfg.t0
        ahead = _propagator(cfg, h_eff, elapsed + step).apply(state)
        behind = _propagator(cfg, h_eff, elapsed - step).apply(state)
        lhs = (ahead - behind).scale(factor)
        rhs = h_eff.apply(_propagator(cfg, h_eff, elapsed).apply(state))
        scale = max(rhs.sup_norm(), 1e-300)
        worst = max(worst, (lhs - rhs).sup_norm() / scale)
    return worst
