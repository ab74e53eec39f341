import json
from fractions import Fraction
from unittest import TestCase

from leibhom.homology.reports import (
    DegreeComparison,
    HRReport,
    HypothesisAClass,
    HypothesisAReport,
    InvariantActionReport,
    LemmaReport,
    SplittingReport,
    StructureReport,
    compare,
)
from leibhom.homology.structure import verify_hr_formula, verify_structure_theorem
from leibhom.series import PoincareSeries

from .utils import extension, sl2_affine


def round_trip(report):
    return type(report).from_json(json.loads(json.dumps(report.to_json())))


def hypothesis_report():
    return HypothesisAReport(
        degree=1,
        classes=[
            HypothesisAClass(
                index=0,
                found=True,
                in_ideal_block=True,
                representative={3: Fraction(1, 2), 7: Fraction(-2)},
            ),
            HypothesisAClass(index=1, found=False, in_ideal_block=False),
        ],
    )


class CompareTest(TestCase):
    def test_equal_lengths(self):
        rows = compare([1, 0, 1], [1, 0, 1])
        self.assertEqual([row.degree for row in rows], [0, 1, 2])
        self.assertTrue(all(row.match for row in rows))

    def test_longer_direct(self):
        rows = compare([1, 0, 1], [1, 0])
        self.assertEqual(len(rows), 3)
        self.assertEqual(rows[2], DegreeComparison(degree=2, direct=1, predicted=None))
        self.assertFalse(rows[2].match)

    def test_longer_predicted(self):
        rows = compare([1], [1, 0])
        self.assertEqual(rows[1], DegreeComparison(degree=1, direct=None, predicted=0))
        self.assertFalse(rows[1].match)

    def test_missing_both(self):
        self.assertFalse(DegreeComparison(degree=0, direct=None, predicted=None).match)

    def test_json(self):
        row = DegreeComparison(degree=2, direct=1, predicted=None)
        self.assertEqual(
            row.to_json(), {"degree": 2, "direct": 1, "match": False, "predicted": None}
        )
        self.assertEqual(round_trip(row), row)


class LemmaReportTest(TestCase):
    def test_ok(self):
        report = LemmaReport(
            name="sl2-affine",
            lie_rows=compare([1, 0, 0, 1], [1, 0, 0, 1]),
            adjoint_rows=compare([0, 0, 1, 1], [0, 0, 1, 1]),
        )
        self.assertTrue(report.ok)
        self.assertTrue(report.to_json()["ok"])
        self.assertEqual(round_trip(report), report)

    def test_unequal_lengths(self):
        report = LemmaReport(
            name="sl2-affine",
            lie_rows=compare([1, 0, 0], [1, 0, 0, 1]),
            adjoint_rows=compare([0, 0, 1, 1], [0, 0, 1, 1]),
        )
        self.assertFalse(report.ok)
        data = report.to_json()
        self.assertFalse(data["ok"])
        self.assertEqual(data["lie"][3]["direct"], None)
        lines = report.render_text().splitlines()
        self.assertEqual(lines[0], "extension lemma for sl2-affine")
        self.assertEqual(lines[-1].split(), ["3", "-", "1", "1", "1", "NO"])
        self.assertEqual(round_trip(report), report)


class StructureReportTest(TestCase):
    def report(self, direct):
        return StructureReport(
            name="so3-affine",
            invariant_dims=(1, 0, 0, 1),
            k_dims=(0, 1, 0),
            predicted=PoincareSeries((1, 0, 1, 1)),
            direct=direct,
            hypothesis_a=[hypothesis_report()],
        )

    def test_round_trip(self):
        report = self.report((1, 0, 1, 1))
        self.assertEqual(round_trip(report), report)

    def test_hypothesis_flag(self):
        report = self.report((1, 0, 1, 1))
        self.assertTrue(all(row.match for row in report.rows))
        # the second class has no invariant representative
        self.assertFalse(report.ok)
        self.assertIn(
            "K_1: 1 of 2 classes have an h-invariant representative",
            report.render_text(),
        )

    def test_text_agrees_with_json(self):
        report = self.report((1, 0, 2, 1))
        data = report.to_json()
        lines = report.render_text().splitlines()
        self.assertEqual(lines[0], "structure theorem for so3-affine")
        self.assertEqual(
            lines[1], "invariants of Lambda*(I): %s" % data["invariant_dims"]
        )
        self.assertEqual(lines[2], "dimensions of K: %s" % data["k_dims"])
        self.assertEqual(lines[3], "predicted series: 1 + t^2 + t^3 + O(t^4)")
        table = lines[5:9]
        for row, line in zip(data["degrees"], table):
            self.assertEqual(
                line.split(),
                [
                    str(row["degree"]),
                    str(row["direct"]),
                    str(row["predicted"]),
                    "yes" if row["match"] else "NO",
                ],
            )
        self.assertEqual(lines[7].split()[-1], "NO")

    def test_short_direct(self):
        report = self.report((1, 0, 1))
        report.hypothesis_a = []
        self.assertFalse(report.ok)
        self.assertEqual(report.rows[3].direct, None)
        last = report.render_text().splitlines()[-1]
        self.assertEqual(last.split(), ["3", "-", "1", "NO"])

    def test_computed(self):
        report = verify_structure_theorem(sl2_affine(), 2)
        self.assertTrue(report.ok)
        self.assertEqual(round_trip(report), report)
        self.assertEqual(report.to_json()["direct"], [1, 0, 1])


class HRReportTest(TestCase):
    def test_mismatch(self):
        report = HRReport(
            name="so3-affine",
            degree=0,
            direct=3,
            delta_term=1,
            summands=[(0, 1, 1), (1, 0, 0)],
        )
        self.assertEqual(report.predicted, 2)
        self.assertFalse(report.ok)
        self.assertFalse(report.to_json()["ok"])
        self.assertEqual(
            report.render_text(),
            "HR_0(so3-affine): direct 3, predicted 2 "
            "(H_3(g) = 1 + K_1 x H_0(g) = 1 x 1), MISMATCH",
        )
        self.assertEqual(round_trip(report), report)

    def test_computed(self):
        report = verify_hr_formula(extension("so3-affine"), 0)
        self.assertTrue(report.ok)
        data = report.to_json()
        self.assertEqual((data["direct"], data["predicted"]), (2, 2))
        self.assertNotIn("MISMATCH", report.render_text())
        self.assertEqual(round_trip(report), report)


class SmallReportTest(TestCase):
    def test_hypothesis(self):
        report = hypothesis_report()
        self.assertFalse(report.ok)
        self.assertEqual(
            report.to_json()["classes"][0]["representative"], [[3, "1/2"], [7, "-2"]]
        )
        self.assertEqual(round_trip(report), report)
        self.assertEqual(
            HypothesisAReport(degree=2).render_text(), "K_2 = 0, nothing to check"
        )

    def test_splitting(self):
        report = SplittingReport(
            name="so3-affine",
            degree=1,
            homology_dim=1,
            wedge_invariant_dim=0,
            k_dim=1,
            zeta_rank=0,
        )
        self.assertTrue(report.ok)
        self.assertEqual(round_trip(report), report)

    def test_invariant_action(self):
        report = InvariantActionReport(
            name="coeff(I;so3-affine)",
            degree=1,
            subcomplex_dim=1,
            induced_invariant_dim=2,
        )
        self.assertFalse(report.ok)
        self.assertEqual(
            report.render_text(), "coeff(I;so3-affine) degree 1: H(C^g) = 1, H(C)^g = 2"
        )
        self.assertEqual(round_trip(report), report)
