import numpy as np
import pytest

from bicomplex import Bicomplex, BicomplexMatrix, Ket, Operator, ScalarProductSpec
from bicomplex import bct
from bicomplex.core import E1, J, ONE

from helpers import random_matrix, random_spd


class TestAtoms:
    def test_scalar_one(self):
        doc = bct.parse("bct v1\nkind: scalar\ndim: 1\n(1 0 0 0)\n")
        assert doc.value == ONE

    def test_scalar_j_from_imaginary_z2(self):
        # z2 = i1 makes the element i1*i2 = j
        doc = bct.parse("bct v1\nkind: scalar\ndim: 1\n(0 0 0 1)\n")
        assert doc.value == J

    def test_seventeen_digits_round_trip(self):
        w = Bicomplex(complex(1 / 3, -2 / 7), complex(1e-17, 12345.6789))
        doc = bct.document_for(w)
        assert bct.parse(bct.render(doc)).value == w


class TestRoundTrips:
    def test_all_kinds_bit_exact(self):
        rng = np.random.default_rng(7)
        docs = [
            bct.document_for(Bicomplex(complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))),
            bct.document_for(Ket(rng.standard_normal(3) + 1j * rng.standard_normal(3),
                                 rng.standard_normal(3) + 1j * rng.standard_normal(3), "b7")),
            bct.document_for(random_matrix(rng, 3)),
            bct.document_for(Operator(random_matrix(rng, 2), "lab")),
            bct.document_for(ScalarProductSpec(random_spd(rng, 2), random_spd(rng, 2))),
        ]
        for doc in docs:
            text = bct.render(doc)
            again = bct.parse(text)
            assert again == doc
            assert bct.render(again) == text

    def test_ket_default_basis(self):
        doc = bct.parse("bct v1\nkind: ket\ndim: 2\n(1 0 0 0) (0 0 0 0)\n")
        assert doc.basis == "canonical"
        assert "basis: canonical" in bct.render(doc)

    def test_operator_keeps_basis_label(self):
        doc = bct.document_for(Operator(BicomplexMatrix.identity(2), "lab"))
        assert bct.parse(bct.render(doc)).value.basis_id == "lab"


class TestParseErrors:
    def test_bad_header(self):
        with pytest.raises(bct.ParseError) as info:
            bct.parse("hello\n")
        assert info.value.line == 1

    def test_unknown_kind(self):
        with pytest.raises(bct.ParseError) as info:
            bct.parse("bct v1\nkind: tensor\ndim: 1\n(0 0 0 0)\n")
        assert info.value.line == 2

    def test_bad_dim(self):
        with pytest.raises(bct.ParseError) as info:
            bct.parse("bct v1\nkind: scalar\ndim: zero\n(0 0 0 0)\n")
        assert info.value.line == 3

    def test_atom_arity(self):
        with pytest.raises(bct.ParseError) as info:
            bct.parse("bct v1\nkind: scalar\ndim: 1\n(1 0 0)\n")
        assert info.value.line == 4

    def test_bad_number_position(self):
        with pytest.raises(bct.ParseError) as info:
            bct.parse("bct v1\nkind: ket\ndim: 2\n(1 0 0 0) (1 0 oops 0)\n")
        assert info.value.line == 4 and info.value.column == 11

    def test_row_count_mismatch(self):
        with pytest.raises(bct.DimMismatch):
            bct.parse("bct v1\nkind: matrix\ndim: 2\n(1 0 0 0) (0 0 0 0)\n")

    def test_atom_count_mismatch(self):
        with pytest.raises(bct.DimMismatch):
            bct.parse("bct v1\nkind: ket\ndim: 3\n(1 0 0 0)\n")

    def test_stray_text(self):
        with pytest.raises(bct.ParseError):
            bct.parse("bct v1\nkind: scalar\ndim: 1\n(1 0 0 0) junk\n")

    def test_basis_on_wrong_kind(self):
        with pytest.raises(bct.ParseError):
            bct.parse("bct v1\nkind: scalar\ndim: 1\nbasis: b\n(1 0 0 0)\n")


class TestSpecKind:
    def test_spec_uses_complex_atoms(self):
        text = (
            "bct v1\nkind: spec\ndim: 2\n"
            "(2 0) (0 0.5)\n(0 -0.5) (1 0)\n"
            "(1 0) (0 0)\n(0 0) (1 0)\n"
        )
        doc = bct.parse(text)
        spec = doc.to_spec()
        assert spec.dim == 2
        assert spec.g1[0, 1] == 0.5j

    def test_to_spec_validates(self):
        text = (
            "bct v1\nkind: spec\ndim: 1\n"
            "(-1 0)\n(1 0)\n"
        )
        doc = bct.parse(text)
        with pytest.raises(ValueError):
            doc.to_spec()

    def test_kind_mismatch(self):
        doc = bct.parse("bct v1\nkind: scalar\ndim: 1\n(1 0 0 0)\n")
        with pytest.raises(bct.KindMismatch):
            doc.to_spec()


class TestDocumentFor:
    def test_scalar_diag_atom(self):
        # e1 = (1 + j)/2 prints as z1 = 1/2, z2 = i1/2
        text = bct.render(bct.document_for(E1))
        assert text.splitlines()[-1] == "(0.5 0 0 0.5)"

    def test_unsupported_type(self):
        with pytest.raises(TypeError):
            bct.document_for("not a value")
