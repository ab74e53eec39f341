from fractions import Fraction
from unittest import TestCase

from leibhom.exactla import SparseMatrix
from leibhom.exceptions import (
    AlgebraMismatch,
    DimensionMismatch,
    InputError,
    InvalidAlgebra,
)
from leibhom.lie.algebra import (
    AbelianExtension,
    LieAlgebra,
    Representation,
    adjoint_rep,
    check_algebra,
    check_representation,
    dual_rep,
    equivariant_hom_dim,
    equivariant_maps,
    invariants,
    is_equivariant,
    is_semisimple,
    killing_form,
    semidirect,
    tensor_product,
    tensor_rep,
    trivial_rep,
    wedge_rep,
)
from leibhom.lie.catalog import so, sl

from .utils import broken_sl2, sl2, sl2_affine


class LieAlgebraTest(TestCase):
    def test_brackets(self):
        g = sl2()
        e, f, h = g.index("e"), g.index("f"), g.index("h")
        self.assertEqual(g.bracket(e, f), {h: 1})
        self.assertEqual(g.bracket(h, e), {e: 2})
        self.assertEqual(g.bracket(h, f), {f: -2})
        self.assertEqual(g.bracket(f, e), {h: -1})
        self.assertEqual(g.bracket(e, e), {})

    def test_ad(self):
        g = sl2()
        ad_h = g.ad(g.index("h"))
        self.assertEqual(ad_h, SparseMatrix.from_dense([[2, 0, 0], [0, -2, 0], [0, 0, 0]]))

    def test_derived(self):
        self.assertEqual(sl2().derived_dim(), 3)
        abelian = LieAlgebra(["x", "y"], name="ab")
        self.assertTrue(abelian.is_abelian())
        self.assertEqual(abelian.derived_dim(), 0)

    def test_unique_labels(self):
        with self.assertRaises(ValueError):
            LieAlgebra(["x", "x"])

    def test_bracket_out_of_range(self):
        with self.assertRaises(DimensionMismatch) as cm:
            LieAlgebra(["x", "y"], {(0, 2): {0: 1}})
        self.assertEqual(str(cm.exception), "Bracket (0, 2) out of range")

    def test_json(self):
        g = sl2()
        data = g.to_json()
        self.assertEqual(data["dim"], 3)
        self.assertEqual(data["basis"], ["e", "f", "h"])
        self.assertTrue(LieAlgebra.from_json(data).same_structure(g))

    def test_json_rationals(self):
        g = LieAlgebra(["x", "y"], {(0, 1): {1: Fraction(1, 2)}}, name="half")
        self.assertEqual(
            g.to_json()["brackets"], [{"i": 0, "j": 1, "coeffs": {"1": "1/2"}}]
        )
        self.assertTrue(LieAlgebra.from_json(g.to_json()).same_structure(g))

    def test_json_malformed(self):
        with self.assertRaises(InputError) as cm:
            LieAlgebra.from_json({"dim": 2, "basis": ["x", "y", "z"]})
        self.assertEqual(
            str(cm.exception), "Algebra dimension 2 does not match 3 basis labels"
        )
        with self.assertRaises(InputError):
            LieAlgebra.from_json({"basis": ["x"]})


class ValidationTest(TestCase):
    def test_sl2(self):
        report = check_algebra(sl2())
        self.assertTrue(report.ok)
        self.assertEqual(report.render_text(), "sl2: ok")

    def test_jacobi_failure(self):
        report = check_algebra(broken_sl2())
        self.assertFalse(report.ok)
        self.assertEqual(len(report.failures), 1)
        failure = report.failures[0]
        self.assertEqual(failure.kind, "jacobi")
        self.assertEqual(failure.indices, (0, 1, 2))
        self.assertEqual(failure.message, "Jacobi identity fails for (e, f, h)")

    def test_antisymmetry_failure(self):
        g = LieAlgebra(["x", "y"], {(0, 1): {0: 1}, (1, 0): {0: 1}})
        report = check_algebra(g)
        self.assertEqual([f.kind for f in report.failures], ["antisymmetry"])
        self.assertEqual(report.failures[0].message, "[x, y] != -[y, x]")

    def test_representation_failure(self):
        g = sl2()
        e = SparseMatrix.from_dense([[0, 1], [0, 0]])
        h = SparseMatrix.from_dense([[1, 0], [0, -1]])
        rep = Representation(g, [e, e, h], name="bad")
        report = check_representation(rep)
        self.assertFalse(report.ok)
        self.assertEqual(report.failures[0].kind, "representation")
        self.assertEqual(report.failures[0].indices, (0, 1))

    def test_catalog_representations(self):
        for n in (2, 3):
            self.assertTrue(check_representation(sl(n)[1]).ok)
        for n in (3, 4):
            self.assertTrue(check_representation(so(n)[1]).ok)

    def test_semidirect_invalid(self):
        with self.assertRaises(InvalidAlgebra) as cm:
            semidirect(broken_sl2(), trivial_rep(broken_sl2(), 1))
        self.assertEqual(str(cm.exception), "Invalid algebra: 1 failure(s)")
        self.assertEqual(cm.exception.report.failures[0].kind, "jacobi")


class RepresentationTest(TestCase):
    def test_shape(self):
        with self.assertRaises(DimensionMismatch) as cm:
            Representation(sl2(), [SparseMatrix.zeros(2, 2)])
        self.assertEqual(str(cm.exception), "Expected 3 action matrices, got 1")

    def test_adjoint(self):
        rep = adjoint_rep(sl2())
        self.assertTrue(check_representation(rep).ok)
        self.assertEqual(invariants(rep).dim, 0)

    def test_trivial(self):
        rep = trivial_rep(sl2(), 2)
        self.assertEqual(rep.labels, ("t1", "t2"))
        self.assertEqual(invariants(rep).dim, 2)

    def test_dual_and_tensor(self):
        g, std = sl(2)
        self.assertTrue(check_representation(dual_rep(std)).ok)
        product = tensor_product(std, std)
        self.assertEqual(product.dim, 4)
        self.assertTrue(check_representation(product).ok)
        self.assertEqual(invariants(tensor_rep(std, 2)).dim, 1)

    def test_wedge_invariants(self):
        g, std = sl(2)
        self.assertEqual([invariants(wedge_rep(std, k)).dim for k in range(3)], [1, 0, 1])
        g, std = so(3)
        self.assertEqual(
            [invariants(wedge_rep(std, k)).dim for k in range(4)], [1, 0, 0, 1]
        )

    def test_mismatch(self):
        with self.assertRaises(AlgebraMismatch):
            tensor_product(sl(2)[1], so(3)[1])

    def test_equivariant_maps(self):
        g, std = so(3)
        maps = equivariant_maps(adjoint_rep(g), std)
        self.assertEqual(len(maps), 1)
        self.assertEqual(maps[0].shape, (3, 3))
        self.assertTrue(is_equivariant(maps[0], adjoint_rep(g), std))

        g, std = sl(2)
        self.assertEqual(equivariant_hom_dim(g, adjoint_rep(g), std), 0)

    def test_json(self):
        g, std = sl(2)
        rep = Representation.from_json(g, std.to_json())
        self.assertEqual(rep.matrices, std.matrices)
        self.assertEqual(rep.labels, std.labels)

    def test_json_malformed(self):
        with self.assertRaises(InputError):
            Representation.from_json(sl2(), {"dim": 2, "basis": ["x"]})


class KillingFormTest(TestCase):
    def test_sl2(self):
        g = sl2()
        form = killing_form(g)
        e, f, h = g.index("e"), g.index("f"), g.index("h")
        self.assertEqual(form[(e, f)], 4)
        self.assertEqual(form[(f, e)], 4)
        self.assertEqual(form[(h, h)], 8)
        self.assertEqual(form[(e, e)], 0)
        self.assertTrue(is_semisimple(g))

    def test_so3(self):
        g = so(3)[0]
        self.assertEqual(killing_form(g), SparseMatrix.identity(3).scale(-2))

    def test_degenerate(self):
        ext = sl2_affine()
        self.assertFalse(is_semisimple(ext.h))


class AbelianExtensionTest(TestCase):
    def test_semidirect(self):
        ext = sl2_affine()
        self.assertEqual(ext.h.dim, 5)
        self.assertEqual(ext.ideal_dim, 2)
        self.assertEqual(list(ext.ideal_indices), [3, 4])
        self.assertEqual(ext.h.basis, ("e", "f", "h", "d1", "d2"))
        # [e, d2] = d1
        self.assertEqual(ext.h.bracket(0, 4), {3: 1})
        self.assertEqual(ext.h.bracket(4, 0), {3: -1})
        self.assertEqual(ext.h.bracket(3, 4), {})
        self.assertTrue(check_algebra(ext.h).ok)

    def test_actions(self):
        ext = sl2_affine()
        self.assertEqual(ext.ideal_action_on_h.dim, 5)
        self.assertTrue(check_representation(ext.g_action_on_h).ok)
        self.assertEqual(ext.project(1), 1)
        self.assertIsNone(ext.project(3))
        self.assertEqual(ext.embed_ideal(1), 4)

    def test_json(self):
        ext = sl2_affine()
        other = AbelianExtension.from_json(ext.to_json())
        self.assertTrue(other.h.same_structure(ext.h))
        self.assertEqual(other.name, "sl2-affine")

    def test_json_malformed(self):
        with self.assertRaises(InputError) as cm:
            AbelianExtension.from_json({"algebra": sl2().to_json()})
        self.assertEqual(
            str(cm.exception), "Malformed extension: missing 'representation'"
        )
