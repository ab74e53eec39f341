from unittest import TestCase

from leibhom.exactla import SparseMatrix, inverse
from leibhom.exceptions import AlgebraMismatch, InputError, InvalidAlgebra
from leibhom.lie import catalog
from leibhom.lie.algebra import check_algebra, check_representation, invariants, wedge_rep
from leibhom.lie.catalog import (
    CatalogEntry,
    catalog_names,
    create_catalog_entry,
    matrix_isomorphism,
    register_catalog_entry,
    shuffles,
    skew_terms,
    sl,
    sl2c_real,
    so,
    so31,
    sp,
    sp_sl_isomorphism,
)
from leibhom.series import PoincareSeries

from .utils import broken_sl2


class ClassicalAlgebraTest(TestCase):
    def test_dims(self):
        self.assertEqual(sl(3)[0].dim, 8)
        self.assertEqual(so(4)[0].dim, 6)
        self.assertEqual(sp(1)[0].dim, 3)
        self.assertEqual(sp(2)[0].dim, 10)
        self.assertEqual(so31()[0].dim, 6)
        self.assertEqual(sl2c_real()[0].dim, 6)

    def test_valid(self):
        for g, rep in [sl(3), so(4), sp(2), so31(), sl2c_real()]:
            with self.subTest(name=g.name):
                self.assertTrue(check_algebra(g).ok)
                self.assertTrue(check_representation(rep).ok)

    def test_labels(self):
        self.assertEqual(sl(2)[0].basis, ("e", "f", "h"))
        self.assertEqual(so(3)[0].basis, ("a12", "a13", "a23"))
        self.assertEqual(sp(1)[1].labels, ("dx1", "dy1"))

    def test_range(self):
        with self.assertRaises(ValueError):
            sl(1)
        with self.assertRaises(ValueError):
            so(2)
        with self.assertRaises(ValueError):
            sp(0)

    def test_shuffles(self):
        self.assertEqual(shuffles(2, 1), [(0, 1, 2), (0, 2, 1), (1, 2, 0)])
        self.assertEqual(len(shuffles(2, 2)), 6)

    def test_skew_terms(self):
        self.assertEqual(skew_terms([0, 1]), {(0, 1): 0.5, (1, 0): -0.5})
        self.assertEqual(skew_terms([1, 1]), {})


class IsomorphismTest(TestCase):
    def test_sp1_sl2(self):
        phi = sp_sl_isomorphism()
        # x1dy1 -> e, y1dx1 -> f, y1dy1 - x1dx1 -> -h
        self.assertEqual(phi, SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, -1]]))
        self.assertEqual(inverse(phi) @ phi, SparseMatrix.identity(3))

    def test_brackets(self):
        source, target = sp(1)[0], sl(2)[0]
        phi = sp_sl_isomorphism()
        for i in range(3):
            for j in range(3):
                with self.subTest(i=i, j=j):
                    self.assertEqual(
                        phi.apply(source.bracket_vectors({i: 1}, {j: 1})),
                        target.bracket_vectors(phi.column(i), phi.column(j)),
                    )

    def test_round_trip(self):
        phi = matrix_isomorphism(sl(2), sp(1))
        self.assertEqual(phi @ sp_sl_isomorphism(), SparseMatrix.identity(3))

    def test_mismatch(self):
        with self.assertRaises(AlgebraMismatch) as cm:
            matrix_isomorphism(so(3), sl(2))
        self.assertEqual(
            str(cm.exception),
            "Standard representations of so3 and sl2 act on different spaces",
        )
        with self.assertRaises(AlgebraMismatch) as cm:
            matrix_isomorphism(sl2c_real(), so31())
        self.assertEqual(str(cm.exception), "Generator v1 of sl2c does not lie in so31")


class CatalogTest(TestCase):
    def test_names(self):
        names = catalog_names()
        for name in ["sl2", "so3-affine", "poincare", "affine-lorentz", "reductive-sl2-d2"]:
            self.assertIn(name, names)
        self.assertEqual(names, sorted(names))

    def test_register(self):
        register_catalog_entry("sl2-copy", lambda: create_catalog_entry("sl2"))
        try:
            self.assertIn("sl2-copy", catalog_names())
            self.assertEqual(create_catalog_entry("sl2-copy").name, "sl2")
        finally:
            del catalog._factories["sl2-copy"]
        self.assertNotIn("sl2-copy", catalog_names())

    def test_unknown(self):
        with self.assertRaises(InputError) as cm:
            create_catalog_entry("nope")
        self.assertEqual(str(cm.exception), "Unknown catalog entry: nope")

    def test_expected_invariants(self):
        for name in ["sl2", "sl3", "so3", "so4", "sp1", "sl2c", "so31"]:
            with self.subTest(name=name):
                entry = create_catalog_entry(name)
                dims = tuple(
                    invariants(wedge_rep(entry.representation, k)).dim
                    for k in range(entry.representation.dim + 1)
                )
                self.assertEqual(dims, entry.expected_invariants)

    def test_expected_series(self):
        self.assertEqual(
            create_catalog_entry("so3-affine").expected_series,
            PoincareSeries((1, 0, 1, 1, 1, 1, 1, 1)),
        )
        self.assertEqual(
            create_catalog_entry("sl2-affine").expected_series,
            PoincareSeries((1, 0, 1, 0, 0, 0, 0, 0)),
        )
        self.assertEqual(
            create_catalog_entry("so31-affine").expected_series,
            PoincareSeries((1, 0, 0, 1, 1, 0, 1, 1)),
        )

    def test_aliases(self):
        entry = create_catalog_entry("poincare")
        self.assertEqual(entry.name, "sl2c-affine")
        self.assertEqual(entry.algebra.dim, 10)
        self.assertEqual(entry.extension.ideal_dim, 4)

    def test_reductive(self):
        entry = create_catalog_entry("reductive-sl2-d2")
        self.assertEqual(entry.expected_invariants, (1, 2, 1))
        self.assertEqual(entry.expected_k[:3], (0, 3, 2))

    def test_validate(self):
        report = create_catalog_entry("so3-affine").validate()
        self.assertTrue(report.ok)
        self.assertEqual(report.name, "so3-affine")


class CatalogJsonTest(TestCase):
    def test_extension(self):
        entry = create_catalog_entry("sl2-affine")
        other = CatalogEntry.from_json(entry.to_json())
        self.assertEqual(other.name, "sl2-affine")
        self.assertTrue(other.algebra.same_structure(entry.algebra))
        self.assertEqual(other.expected_invariants, (1, 0, 1))
        self.assertEqual(other.expected_series, entry.expected_series)
        self.assertEqual(other.provenance, entry.provenance)

    def test_algebra(self):
        entry = create_catalog_entry("sl2")
        data = entry.to_json()
        self.assertNotIn("extension", data)
        other = CatalogEntry.from_json(data)
        self.assertIsNone(other.extension)
        self.assertEqual(other.representation.dim, 2)

    def test_bare_algebra(self):
        other = CatalogEntry.from_json({"algebra": broken_sl2().to_json()})
        self.assertEqual(other.name, "broken")
        report = other.validate()
        self.assertFalse(report.ok)
        self.assertEqual(report.failures[0].kind, "jacobi")

    def test_invalid_extension(self):
        data = {
            "name": "broken-affine",
            "extension": {
                "algebra": broken_sl2().to_json(),
                "representation": sl(2)[1].to_json(),
            },
        }
        with self.assertRaises(InvalidAlgebra):
            CatalogEntry.from_json(data)
        entry = CatalogEntry.from_json(data, check=False)
        self.assertFalse(entry.validate().ok)

    def test_malformed(self):
        for data, message in [
            ([], "Expected a JSON object"),
            ({}, "Expected an algebra or an extension"),
            ({"extension": {}}, "Malformed extension (extension)"),
            (
                {"extension": {"algebra": sl(2)[0].to_json()}},
                "Missing representation (extension)",
            ),
            (
                {"algebra": sl(2)[0].to_json(), "expected_k": ["x"]},
                "Malformed expected values: invalid literal for int() with base 10: 'x'",
            ),
        ]:
            with self.subTest(message=message):
                with self.assertRaises(InputError) as cm:
                    CatalogEntry.from_json(data)
                self.assertEqual(str(cm.exception), message)
