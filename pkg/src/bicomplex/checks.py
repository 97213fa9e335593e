"""Invariant suites the `check` command runs on user-supplied documents.

Each suite re-derives the properties the value's kind promises, using
independent routes where one exists (cofactor determinants, direct
Gram-entry scalar products).  Results are (name, residual, tolerance)
triples; a verdict passes only when every residual is within bounds.
Probe vectors come from a fixed seed so runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOLERANCE,
    Bicomplex,
    Classification,
    Hyperbolic,
    KetClassification,
    ONE,
    Tolerance,
)
from .hilbert import (
    Ket,
    NotABasis,
    NullConePivot,
    ScalarProductSpec,
    gram_schmidt,
    normalize,
    scalar_product,
)
from .matrix import BicomplexMatrix
from .operators import (
    Operator,
    adjoint,
    compose,
    eigendecompose_self_adjoint,
    eigendecompose_unitary,
    is_self_adjoint,
    is_unitary,
    outer_product,
    spectral_reconstruct,
)
from .reference import det_cofactor, scalar_product_direct

PROBE_SEED = 271828
COFACTOR_MAX_ORDER = 5


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _result(name: str, residual: float, tolerance: float) -> CheckResult:
    return CheckResult(name, float(residual), float(tolerance))


def _probe_kets(dim: int, count: int, basis_id: str) -> list[Ket]:
    rng = np.random.default_rng(PROBE_SEED)
    kets = []
    for _ in range(count):
        z1 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        z2 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        kets.append(Ket(z1, z2, basis_id))
    return kets


def check_scalar(w: Bicomplex, tol: Tolerance) -> tuple[list[CheckResult], list[str]]:
    results = []
    notes = []
    scale = max(1.0, w.euclid_norm())

    c1, c2 = w.to_idempotent()
    results.append(
        _result(
            "idempotent-round-trip",
            (Bicomplex.from_idempotent(c1, c2) - w).euclid_norm() / scale,
            tol.eps_eq,
        )
    )
    involution = max((w.conjugate(k).conjugate(k) - w).euclid_norm() for k in (1, 2, 3))
    results.append(_result("conjugation-involution", involution / scale, tol.eps_eq))

    squared = Hyperbolic.from_bicomplex(w.modulus_squared("j"), tol)
    results.append(
        _result(
            "modulus-j-positive",
            max(0.0, -min(squared.x1, squared.x2)) / scale**2,
            tol.eps_eq,
        )
    )
    results.append(
        _result(
            "norm-consistency",
            abs(w.euclid_norm() - math.sqrt(max(w.modulus_squared("j").z1.real, 0.0))) / scale,
            tol.eps_eq,
        )
    )

    classification = w.classify(tol)
    if classification is Classification.INVERTIBLE:
        results.append(
            _result("inverse-residual", (w * w.inverse(tol) - ONE).euclid_norm(), 1e-12)
        )
    else:
        notes.append(f"inverse: skipped ({classification.value})")
    root = w.nth_root(3)
    results.append(_result("cube-root-residual", (root**3 - w).euclid_norm() / scale, 1e-12))
    return results, notes


def check_ket(psi: Ket, spec: ScalarProductSpec | None, tol: Tolerance):
    results = []
    notes = []
    if spec is None:
        spec = ScalarProductSpec.identity(psi.dim)
    rebuilt = Ket.from_components(psi.component(1), psi.component(2), psi.basis_id)
    scale = max(1.0, psi.sup_norm())
    results.append(_result("component-round-trip", (rebuilt - psi).sup_norm() / scale, tol.eps_eq))

    ket_class = psi.classify(tol)
    product_class = scalar_product(spec, psi, psi).classify(tol)
    consistent = ket_class.value == product_class.value or (
        ket_class is KetClassification.REGULAR and product_class is Classification.INVERTIBLE
    )
    results.append(_result("classification-consistency", 0.0 if consistent else 1.0, 0.0))

    squared = scalar_product(spec, psi, psi).to_idempotent()
    results.append(
        _result(
            "self-product-positive",
            max(0.0, -min(squared.c1.real, squared.c2.real)) / scale**2,
            tol.eps_eq,
        )
    )

    if ket_class is KetClassification.REGULAR:
        unit = normalize(spec, psi, tol)
        results.append(
            _result("normalize-unit", (scalar_product(spec, unit, unit) - ONE).euclid_norm(), 1e-10)
        )
    else:
        notes.append(f"normalize: skipped ({ket_class.value})")
    return results, notes


def _matrix_checks(matrix: BicomplexMatrix, tol: Tolerance):
    results = []
    notes = []
    n = matrix.order
    det_fast = matrix.det()
    entry_scale = max(matrix.max_norm(), 1.0)
    det_scale = max(det_fast.euclid_norm(), entry_scale**n, 1e-30)

    if n <= COFACTOR_MAX_ORDER:
        reference = det_cofactor(matrix)
        results.append(
            _result("det-idempotent-vs-direct", (det_fast - reference).euclid_norm() / det_scale, 1e-9)
        )
    else:
        notes.append(f"det-idempotent-vs-direct: skipped (order {n} > {COFACTOR_MAX_ORDER})")
    results.append(
        _result(
            "det-transpose", (matrix.transpose().det() - det_fast).euclid_norm() / det_scale, 1e-9
        )
    )

    squared = matrix @ matrix
    law = max(
        float(np.abs(squared.component(k) - matrix.component(k) @ matrix.component(k)).max())
        for k in (1, 2)
    )
    results.append(_result("product-component-law", law / max(1.0, entry_scale**2), 1e-10))

    if not matrix.is_singular(tol):
        inverse = matrix.inverse(tol)
        cond = max(inverse.cond1, inverse.cond2, 1.0)
        identity = BicomplexMatrix.identity(n)
        results.append(
            _result(
                "inverse-residual",
                (matrix @ inverse.matrix - identity).max_norm(),
                1e-10 * cond,
            )
        )
        results.append(
            _result(
                "inverse-left-right",
                (inverse.matrix @ matrix - matrix @ inverse.matrix).max_norm(),
                1e-10 * cond,
            )
        )

        rows = [
            Ket(matrix.z1[i, :].copy(), matrix.z2[i, :].copy(), "check-rows") for i in range(n)
        ]
        spec = ScalarProductSpec.identity(n)
        try:
            ortho = gram_schmidt(spec, rows, tol)
        except (NullConePivot, NotABasis) as exc:
            results.append(_result("orthogonalize-rows", math.inf, 1e-10))
            notes.append(f"orthogonalize-rows: {type(exc).__name__}: {exc}")
        else:
            worst = 0.0
            for i in range(n):
                for j in range(i, n):
                    product = scalar_product(spec, ortho[i], ortho[j])
                    target = ONE if i == j else Bicomplex(0.0)
                    worst = max(worst, (product - target).euclid_norm())
            results.append(_result("orthogonalize-rows", worst, 1e-10))
    else:
        classification = det_fast.classify(tol)
        notes.append(f"inverse: skipped (singular, det {classification.value})")
        notes.append("orthogonalize-rows: skipped (singular)")
    return results, notes


def check_matrix(matrix: BicomplexMatrix, tol: Tolerance):
    return _matrix_checks(matrix, tol)


def check_operator(op: Operator, spec: ScalarProductSpec | None, tol: Tolerance):
    results, notes = _matrix_checks(op.matrix, tol)
    if spec is None:
        spec = ScalarProductSpec.identity(op.dim)
    scale = max(1.0, op.matrix.max_norm())

    twice = adjoint(spec, adjoint(spec, op))
    results.append(_result("adjoint-involution", (twice.matrix - op.matrix).max_norm() / scale, 1e-10))

    probes = _probe_kets(op.dim, 2, op.basis_id)
    star = adjoint(spec, op)
    defining = 0.0
    for psi in probes:
        for phi in probes:
            left = scalar_product(spec, psi, op.apply(phi))
            right = scalar_product(spec, star.apply(psi), phi)
            defining = max(defining, (left - right).euclid_norm() / max(1.0, left.euclid_norm()))
    results.append(_result("adjoint-defining-relation", defining, 1e-10))

    if is_self_adjoint(spec, op, tol):
        notes.append("spectral-class: self-adjoint")
        pairs = eigendecompose_self_adjoint(spec, op, tol)
        rebuilt = spectral_reconstruct(spec, pairs)
        results.append(
            _result("spectral-reconstruction", (rebuilt.matrix - op.matrix).max_norm() / scale, 1e-9)
        )
        imag = max(
            max(abs(pair.value.to_idempotent().c1.imag), abs(pair.value.to_idempotent().c2.imag))
            / max(1.0, pair.value.euclid_norm())
            for pair in pairs
        )
        results.append(_result("eigenvalue-imag-parts", imag, 1e-10))
        results.append(_result("eigenket-orthonormal", _orthonormal_defect(spec, pairs), 1e-10))
        results.append(_result("completeness", _completeness_defect(spec, pairs), 1e-10))
    elif is_unitary(spec, op, tol):
        notes.append("spectral-class: unitary")
        pairs = eigendecompose_unitary(spec, op, tol)
        defect = (compose(adjoint(spec, op), op).matrix - BicomplexMatrix.identity(op.dim)).max_norm()
        results.append(_result("unitary-defect", defect, 1e-10))
        modulus = max(
            (pair.value.conjugate(3) * pair.value - ONE).euclid_norm() for pair in pairs
        )
        results.append(_result("eigenvalue-unit-modulus", modulus, 1e-9))
        results.append(_result("eigenket-orthonormal", _orthonormal_defect(spec, pairs), 1e-10))
        results.append(_result("completeness", _completeness_defect(spec, pairs), 1e-10))
    else:
        results.append(_result("spectral-class", 1.0, 0.0))
        notes.append(
            "spectral-class: neither self-adjoint nor unitary; spectral decomposition unavailable"
        )
    return results, notes


def _orthonormal_defect(spec: ScalarProductSpec, pairs) -> float:
    worst = 0.0
    for i in range(len(pairs)):
        for j in range(i, len(pairs)):
            product = scalar_product(spec, pairs[i].ket, pairs[j].ket)
            target = ONE if i == j else Bicomplex(0.0)
            worst = max(worst, (product - target).euclid_norm())
    return worst


def _completeness_defect(spec: ScalarProductSpec, pairs) -> float:
    total = outer_product(spec, pairs[0].ket, pairs[0].ket)
    for pair in pairs[1:]:
        total = total + outer_product(spec, pair.ket, pair.ket)
    return (total.matrix - BicomplexMatrix.identity(total.dim)).max_norm()


def check_spec(g1: np.ndarray, g2: np.ndarray, tol: Tolerance):
    results = []
    notes = []
    for name, gram in (("hermitian-g1", g1), ("hermitian-g2", g2)):
        scale = max(1.0, float(np.abs(gram).max()))
        results.append(
            _result(name, float(np.abs(gram - gram.conj().T).max()) / scale, tol.eps_eq)
        )
    try:
        spec = ScalarProductSpec(g1, g2, tol)
    except ValueError as exc:
        results.append(_result("positive-definite", 1.0, 0.0))
        notes.append(f"positive-definite: {exc}")
        return results, notes
    results.append(_result("positive-definite", 0.0, 0.0))

    probes = _probe_kets(spec.dim, 2, "check-probes")
    worst = 0.0
    for psi in probes:
        for phi in probes:
            fast = scalar_product(spec, psi, phi)
            direct = scalar_product_direct(spec, psi, phi)
            worst = max(worst, (fast - direct).euclid_norm() / max(1.0, fast.euclid_norm()))
    results.append(_result("decomposition-vs-direct", worst, 1e-12))
    notes.append(
        "closed-under-reference: " + ("yes" if spec.is_closed_under_reference(tol) else "no")
    )
    return results, notes


def run_checks(doc, spec: ScalarProductSpec | None, tol: Tolerance = DEFAULT_TOLERANCE):
    """Dispatch on document kind; returns (results, notes)."""
    if doc.kind == "scalar":
        return check_scalar(doc.value, tol)
    if doc.kind == "ket":
        return check_ket(doc.value, spec, tol)
    if doc.kind == "matrix":
        return check_matrix(doc.value, tol)
    if doc.kind == "operator":
        return check_operator(doc.value, spec, tol)
    if doc.kind == "spec":
        return check_spec(doc.value[0], doc.value[1], tol)
    raise ValueError(f"unknown kind {doc.kind!r}")
