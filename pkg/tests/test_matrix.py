import numpy as np
import pytest

from bicomplex import (
    Bicomplex,
    BicomplexMatrix,
    Classification,
    DimensionMismatch,
    SingularMatrix,
    approx_eq,
)
from bicomplex.core import E1, J, ONE
from bicomplex.reference import det_cofactor, gauss_jordan_inverse, matmul_entrywise

from helpers import random_matrix, random_well_conditioned


class TestComponentView:
    def test_round_trip(self):
        rng = np.random.default_rng(3)
        a = random_matrix(rng, 4)
        back = BicomplexMatrix.from_components(a.component(1), a.component(2))
        assert (back - a).max_norm() <= 4e-16 * max(1.0, a.max_norm())

    def test_entry_accessor(self):
        m = BicomplexMatrix.diagonal([E1, ONE])
        assert m.entry(0, 0) == E1
        assert m.entry(0, 1) == Bicomplex(0)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            BicomplexMatrix(np.zeros((2, 3)), np.zeros((2, 3)))
        with pytest.raises(ValueError):
            BicomplexMatrix.from_entries([[ONE, ONE], [ONE]])


class TestDet:
    def test_identity(self):
        assert approx_eq(BicomplexMatrix.identity(4).det(), ONE)

    def test_diagonal_null_cone(self):
        det = BicomplexMatrix.diagonal([E1, ONE]).det()
        assert approx_eq(det, E1)
        assert det.classify() is Classification.NULL_CONE_2

    def test_product_law(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = random_matrix(rng, 4)
            b = random_matrix(rng, 4)
            lhs = (a @ b).det()
            rhs = a.det() * b.det()
            assert (lhs - rhs).euclid_norm() <= 1e-10 * max(1.0, rhs.euclid_norm())

    def test_transpose_law(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            a = random_matrix(rng, 4)
            det = a.det()
            assert (a.transpose().det() - det).euclid_norm() <= 1e-10 * max(
                1.0, det.euclid_norm()
            )

    def test_cofactor_oracle(self):
        rng = np.random.default_rng(19)
        for n in (2, 3, 4):
            for _ in range(10):
                a = random_matrix(rng, n)
                fast = a.det()
                reference = det_cofactor(a)
                assert (fast - reference).euclid_norm() <= 1e-9 * max(
                    1.0, reference.euclid_norm()
                )


class TestSingular:
    def test_identity_not_singular(self):
        assert not BicomplexMatrix.identity(3).is_singular()

    def test_null_cone_det(self):
        diag = BicomplexMatrix.diagonal([E1, ONE])
        assert diag.is_singular()
        with pytest.raises(SingularMatrix) as info:
            diag.inverse()
        assert info.value.components == (2,)

    def test_zero_row(self):
        m = BicomplexMatrix.from_entries([[ONE, J], [Bicomplex(0), Bicomplex(0)]])
        assert m.is_singular()

    def test_one_singular_component(self):
        rng = np.random.default_rng(29)
        c1 = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        c1[2, :] = 0.0
        c2 = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        m = BicomplexMatrix.from_components(c1, c2)
        assert m.det().classify() is Classification.NULL_CONE_1
        with pytest.raises(SingularMatrix) as info:
            m.inverse()
        assert info.value.components == (1,)


class TestInverse:
    def test_identity(self):
        inv = BicomplexMatrix.identity(3).inverse()
        assert (inv.matrix - BicomplexMatrix.identity(3)).max_norm() == 0.0

    def test_diagonal_scalar(self):
        inv = BicomplexMatrix.diagonal([Bicomplex(2) + J]).inverse()
        assert approx_eq(inv.matrix.entry(0, 0), Bicomplex(2 / 3) - J * (1 / 3))

    def test_random_round_trip(self):
        rng = np.random.default_rng(31)
        identity = BicomplexMatrix.identity(5)
        for _ in range(20):
            a = random_well_conditioned(rng, 5)
            inv = a.inverse()
            assert (a @ inv.matrix - identity).max_norm() <= 1e-10
            assert (inv.matrix @ a - a @ inv.matrix).max_norm() <= 1e-10

    def test_gauss_jordan_oracle(self):
        rng = np.random.default_rng(37)
        for _ in range(10):
            a = random_well_conditioned(rng, 4)
            direct = gauss_jordan_inverse(a)
            fast = a.inverse().matrix
            assert (direct - fast).max_norm() <= 1e-9


class TestProductAndTranspose:
    def test_identity_neutral(self):
        rng = np.random.default_rng(41)
        a = random_matrix(rng, 4)
        assert (a @ BicomplexMatrix.identity(4) - a).max_norm() == 0.0

    def test_component_law(self):
        rng = np.random.default_rng(43)
        a = random_matrix(rng, 4)
        b = random_matrix(rng, 4)
        product = a @ b
        for k in (1, 2):
            direct = a.component(k) @ b.component(k)
            assert np.abs(product.component(k) - direct).max() <= 1e-12 * max(
                1.0, float(np.abs(direct).max())
            )

    def test_matches_entrywise_oracle(self):
        rng = np.random.default_rng(47)
        a = random_matrix(rng, 3)
        b = random_matrix(rng, 3)
        assert ((a @ b) - matmul_entrywise(a, b)).max_norm() <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            BicomplexMatrix.identity(2) @ BicomplexMatrix.identity(3)

    def test_scale_by_bicomplex(self):
        m = BicomplexMatrix.identity(2).scale(J)
        assert m.entry(0, 0) == J
        assert m.entry(1, 0) == Bicomplex(0)
