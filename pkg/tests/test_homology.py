from fractions import Fraction
from unittest import TestCase, skipIf

from leibhom.configuration import HomologyConfiguration
from leibhom.exactla import SparseMatrix, rank
from leibhom.exceptions import DegreeOutOfRange, NotACycle
from leibhom.homology.complexes import (
    coefficient_action,
    epsilon_map,
    ideal_coefficient_complex,
    leibniz_complex,
    lie_complex,
    proj_pi_prime,
)
from leibhom.homology.homology import (
    add_boundary,
    adjoint_homology,
    coefficient_invariant_homology,
    connecting_delta,
    connecting_delta_lie,
    graded_homology,
    homology,
    homology_of_invariant_action_check,
    hr_homology,
    induced_on_homology,
    lemma_cross_check,
    leibniz_homology,
    lie_homology,
    wedge_invariant_dims,
)
from leibhom.logger import ComputationLogger

from .utils import SKIP_TESTS, catalog_extensions, extension, sl2, sl2_affine


class HomologyTest(TestCase):
    def test_sl2(self):
        result = lie_homology(sl2(), 3)
        self.assertEqual(result.betti, (1, 0, 0, 1))
        self.assertEqual(result.render_text(), "lie(sl2): 1, 0, 0, 1")
        self.assertEqual(result.to_json()["betti"], [1, 0, 0, 1])

    def test_ungraded(self):
        configuration = HomologyConfiguration(use_gradings=False)
        self.assertEqual(
            lie_homology(sl2(), 3, configuration=configuration).betti, (1, 0, 0, 1)
        )

    def test_jobs(self):
        configuration = HomologyConfiguration(jobs=2)
        self.assertEqual(
            lie_homology(sl2(), 3, configuration=configuration).betti, (1, 0, 0, 1)
        )
        self.assertEqual(
            lie_homology(
                sl2(), 3, representatives=True, configuration=configuration
            ).betti,
            (1, 0, 0, 1),
        )

    def test_ranks(self):
        C = lie_complex(sl2(), 3)
        degree = homology(C, 2, representatives=False)
        self.assertEqual((degree.dim, degree.cycle_dim, degree.boundary_dim), (0, 0, 0))
        degree = homology(C, 1, representatives=False)
        self.assertEqual((degree.dim, degree.cycle_dim, degree.boundary_dim), (0, 3, 3))
        with self.assertRaises(ValueError):
            degree.representatives

    def test_representatives(self):
        C = lie_complex(sl2(), 4)
        top = homology(C, 3)
        self.assertEqual(len(top.representatives), 1)
        self.assertEqual(list(top.representatives[0]), [0])
        self.assertFalse(top.is_boundary({0: Fraction(1)}))
        self.assertEqual(top.to_json()["representatives"][0][0][0], 0)

        # e = d(-1/2 e ^ h)
        self.assertTrue(homology(C, 1).is_boundary({0: Fraction(1)}))

    def test_not_a_cycle(self):
        C = lie_complex(sl2(), 3)
        degree = homology(C, 2)
        with self.assertRaises(NotACycle) as cm:
            degree.coordinates({0: Fraction(1)})
        self.assertEqual(str(cm.exception), "Vector is not a cycle in degree 2")

    def test_out_of_range(self):
        C = lie_complex(sl2(), 2)
        with self.assertRaises(DegreeOutOfRange):
            homology(C, 2)
        with self.assertRaises(DegreeOutOfRange):
            homology(C, -1)
        result = graded_homology(C, range(2))
        with self.assertRaises(DegreeOutOfRange):
            result[3]

    def test_trace(self):
        trace = ComputationLogger().start_trace("lie")
        lie_homology(sl2(), 1, trace=trace)
        names = [event["name"] for event in trace.events]
        self.assertEqual(names.count("homology:degree_computed"), 2)

    def test_add_boundary(self):
        C = lie_complex(sl2(), 3)
        # e + d(1/2 e ^ h) = 0
        self.assertEqual(add_boundary(C, 1, {0: Fraction(1)}, {1: Fraction(1, 2)}), {})


class SemisimpleTest(TestCase):
    def test_leibniz(self):
        self.assertEqual(leibniz_homology(sl2(), 3).betti, (1, 0, 0, 0))

    def test_adjoint(self):
        self.assertEqual(adjoint_homology(sl2(), 2).betti, (0, 0, 0))

    def test_so3(self):
        g = extension("so3-affine").g
        self.assertEqual(lie_homology(g, 3).betti, (1, 0, 0, 1))


class ExtensionHomologyTest(TestCase):
    def test_lie(self):
        ext = sl2_affine()
        self.assertEqual(lie_homology(ext.h, 3).betti, (1, 0, 1, 1))

    def test_leibniz(self):
        ext = sl2_affine()
        self.assertEqual(leibniz_homology(ext.h, 2).betti, (1, 0, 1))

    def test_wedge_invariants(self):
        self.assertEqual(wedge_invariant_dims(sl2_affine()), (1, 0, 1))
        self.assertEqual(wedge_invariant_dims(extension("so3-affine")), (1, 0, 0, 1))
        self.assertEqual(wedge_invariant_dims(extension("sp1-affine"), 1), (1, 0))

    def test_coefficient_invariants(self):
        ext = extension("so3-affine")
        self.assertEqual(coefficient_invariant_homology(ext, 3).betti, (0, 1, 1, 0))

    def test_hr(self):
        self.assertEqual(hr_homology(sl2_affine().h, 0).betti, (1,))
        self.assertEqual(hr_homology(extension("so3-affine").h, 0).betti, (2,))

    def test_lemma(self):
        report = lemma_cross_check(sl2_affine(), 3)
        self.assertTrue(report.ok)
        self.assertEqual([row.direct for row in report.lie_rows], [1, 0, 1, 1])
        self.assertIn("extension lemma for sl2-affine", report.render_text())

    def test_invariant_action(self):
        ext = extension("so3-affine")
        C = ideal_coefficient_complex(ext, 3)
        report = homology_of_invariant_action_check(C, coefficient_action(ext, C), 1)
        self.assertTrue(report.ok)
        self.assertEqual(report.subcomplex_dim, 1)

    def test_connecting_delta_lie(self):
        # H_3(sl2) -> HR_0(sl2)
        matrix = connecting_delta_lie(sl2(), 2)
        self.assertEqual(matrix.cols, 1)

    def test_connecting_delta(self):
        # HL_3 and HL_2 vanish, so H_3(sl2) -> H^rel_0(sl2) is an isomorphism
        matrix = connecting_delta(sl2(), 3)
        self.assertEqual((matrix.rows, matrix.cols), (1, 1))
        self.assertEqual(rank(matrix), 1)

    def test_connecting_delta_low_degree(self):
        with self.assertRaises(DegreeOutOfRange) as cm:
            connecting_delta(sl2(), 2)
        self.assertEqual(str(cm.exception), "connecting_delta requires n >= 3")

    def test_induced_degree_zero(self):
        matrix = induced_on_homology(proj_pi_prime(sl2(), 2), 0)
        self.assertEqual(matrix, SparseMatrix.from_dense([[1]]))

    def test_induced_degree_three(self):
        # HL_3(sl2) = 0 maps into H_3(sl2)
        matrix = induced_on_homology(proj_pi_prime(sl2(), 4), 3)
        self.assertEqual((matrix.rows, matrix.cols), (1, 0))

    @skipIf("slow" in SKIP_TESTS, "Skipping slow tests")
    def test_so3_leibniz(self):
        ext = extension("so3-affine")
        self.assertEqual(leibniz_homology(ext.h, 3).betti, (1, 0, 1, 1))


class InducedMapTest(TestCase):
    def test_independent_of_representative(self):
        # epsilon_*: H_1(I; h) -> HL_2(h)
        for ext in catalog_extensions():
            source = ideal_coefficient_complex(ext, 2)
            target = leibniz_complex(ext.h, 3)
            f = epsilon_map(source, target, ext)
            source_degree = homology(source, 1)
            target_degree = homology(target, 2)
            matrix = induced_on_homology(
                f, 1, source=source_degree, target=target_degree
            )
            chain = {k: Fraction(k + 1) for k in range(source.dim(2))}
            for j, rep in enumerate(source_degree.representatives):
                with self.subTest(name=ext.name, j=j):
                    shifted = add_boundary(source, 1, rep, chain)
                    unit = [int(i == j) for i in range(source_degree.dim)]
                    self.assertEqual(source_degree.coordinates(shifted), unit)
                    self.assertEqual(
                        target_degree.coordinates(f.apply(1, shifted)),
                        [matrix.column(j).get(i, 0) for i in range(target_degree.dim)],
                    )
