from fractions import Fraction
from unittest import TestCase

from leibhom.exactla import (
    Quotient,
    SparseMatrix,
    Subspace,
    as_vector,
    column_space,
    hstack,
    in_span,
    independent_columns,
    inverse,
    kernel_basis,
    kron,
    quotient_coordinates,
    rank,
    rref,
    to_rational,
    vstack,
)
from leibhom.exceptions import DimensionMismatch, NotACycle, NotASubspace


class RationalTest(TestCase):
    def test_to_rational(self):
        self.assertEqual(to_rational(3), Fraction(3))
        self.assertEqual(to_rational("-2/6"), Fraction(-1, 3))
        self.assertEqual(to_rational(Fraction(1, 2)), Fraction(1, 2))

    def test_to_rational_float(self):
        with self.assertRaises(TypeError):
            to_rational(0.5)

    def test_as_vector(self):
        self.assertEqual(as_vector([0, 1, "1/2"], 3), {1: 1, 2: Fraction(1, 2)})
        self.assertEqual(as_vector({2: 5, 0: 0}, 3), {2: 5})

    def test_as_vector_mismatch(self):
        with self.assertRaises(DimensionMismatch) as cm:
            as_vector([1, 2], 3)
        self.assertEqual(str(cm.exception), "Vector has length 2, expected 3")

        with self.assertRaises(DimensionMismatch) as cm:
            as_vector({3: 1}, 3)
        self.assertEqual(str(cm.exception), "Index 3 out of range for dimension 3")


class SparseMatrixTest(TestCase):
    def test_from_dense(self):
        m = SparseMatrix.from_dense([[1, 0], [0, "1/3"]])
        self.assertEqual(m.shape, (2, 2))
        self.assertEqual(m.nnz, 2)
        self.assertEqual(m[(1, 1)], Fraction(1, 3))
        self.assertEqual(m[(0, 1)], 0)

    def test_apply(self):
        m = SparseMatrix.from_dense([[1, 2], [3, 4]])
        self.assertEqual(m.apply({0: 1, 1: -1}), {0: -1, 1: -1})
        self.assertEqual(m.apply({}), {})

    def test_matmul(self):
        a = SparseMatrix.from_dense([[1, 2], [3, 4]])
        b = SparseMatrix.from_dense([[0, 1], [1, 0]])
        self.assertEqual(a @ b, SparseMatrix.from_dense([[2, 1], [4, 3]]))
        self.assertEqual(a @ SparseMatrix.identity(2), a)

    def test_matmul_mismatch(self):
        with self.assertRaises(DimensionMismatch) as cm:
            SparseMatrix.zeros(2, 3) @ SparseMatrix.zeros(2, 3)
        self.assertEqual(
            str(cm.exception), "Cannot multiply a 2x3 matrix by a 2x3 matrix"
        )

    def test_add_sub(self):
        a = SparseMatrix.from_dense([[1, 2], [3, 4]])
        self.assertTrue((a - a).is_zero())
        self.assertEqual(a + a, a.scale(2))
        self.assertEqual(-a, a.scale(-1))

    def test_transpose(self):
        a = SparseMatrix.from_dense([[1, 2, 3], [4, 5, 6]])
        self.assertEqual(a.transpose(), SparseMatrix.from_dense([[1, 4], [2, 5], [3, 6]]))

    def test_restrict(self):
        a = SparseMatrix.from_dense([[1, 2, 3], [4, 5, 6]])
        self.assertEqual(a.restrict([1], [2, 0]), SparseMatrix.from_dense([[6, 4]]))

    def test_stack(self):
        a = SparseMatrix.from_dense([[1, 2]])
        b = SparseMatrix.from_dense([[3, 4]])
        self.assertEqual(vstack([a, b]), SparseMatrix.from_dense([[1, 2], [3, 4]]))
        self.assertEqual(hstack([a, b]), SparseMatrix.from_dense([[1, 2, 3, 4]]))

    def test_kron(self):
        a = SparseMatrix.from_dense([[1, 2]])
        b = SparseMatrix.from_dense([[0, 1], [1, 0]])
        self.assertEqual(
            kron(a, b), SparseMatrix.from_dense([[0, 1, 0, 2], [1, 0, 2, 0]])
        )

    def test_json(self):
        a = SparseMatrix.from_dense([[0, "1/2"], [-3, 0]])
        data = a.to_json()
        self.assertEqual(
            data, {"rows": 2, "cols": 2, "entries": [[0, 1, "1/2"], [1, 0, "-3"]]}
        )
        self.assertEqual(SparseMatrix.from_json(data), a)


class EliminationTest(TestCase):
    def test_rank(self):
        self.assertEqual(rank(SparseMatrix.from_dense([[1, 2], [2, 4]])), 1)
        self.assertEqual(rank(SparseMatrix.identity(4)), 4)
        self.assertEqual(rank(SparseMatrix.zeros(3, 2)), 0)

    def test_rank_exact(self):
        # singular over Q, but not in floating point arithmetic
        m = SparseMatrix.from_dense(
            [["1/3", "1/7"], ["1/21", "1/49"]]
        )
        self.assertEqual(rank(m), 1)

    def test_rref(self):
        reduced, pivots = rref(SparseMatrix.from_dense([[0, 2, 4], [0, 1, 2]]))
        self.assertEqual(pivots, (1,))
        self.assertEqual(reduced, SparseMatrix.from_dense([[0, 1, 2], [0, 0, 0]]))

    def test_inverse(self):
        m = SparseMatrix.from_dense([[2, 1], [1, 1]])
        self.assertEqual(inverse(m), SparseMatrix.from_dense([[1, -1], [-1, 2]]))
        self.assertEqual(inverse(m) @ m, SparseMatrix.identity(2))

    def test_inverse_singular(self):
        with self.assertRaises(ValueError):
            inverse(SparseMatrix.from_dense([[1, 2], [2, 4]]))

    def test_kernel_basis(self):
        m = SparseMatrix.from_dense([[1, 1, 0], [0, 0, 1]])
        kernel = kernel_basis(m)
        self.assertEqual(kernel.dim, 1)
        self.assertEqual(kernel.basis[0], {0: -1, 1: 1})
        self.assertEqual(m.apply(kernel.basis[0]), {})

    def test_kernel_of_zero(self):
        self.assertEqual(kernel_basis(SparseMatrix.zeros(2, 3)).dim, 3)
        self.assertEqual(kernel_basis(SparseMatrix.zeros(0, 2)).dim, 2)

    def test_column_space(self):
        m = SparseMatrix.from_dense([[1, 2, 0], [1, 2, 1]])
        space = column_space(m)
        self.assertEqual(space.dim, 2)
        self.assertEqual(space.basis, ({0: 1, 1: 1}, {1: 1}))

    def test_independent_columns(self):
        self.assertEqual(
            independent_columns(2, [{0: 1}, {0: 2}, {1: 1}, {0: 1, 1: 1}]), [0, 2]
        )


class SubspaceTest(TestCase):
    def test_coordinates(self):
        space = Subspace(3, [{0: 1, 1: 1}, {1: 1, 2: 1}])
        self.assertEqual(space.coordinates({0: 1, 1: 2, 2: 1}), [1, 1])
        self.assertEqual(space.coordinates([2, 0, -2]), [2, -2])
        self.assertIsNone(space.coordinates({0: 1}))
        self.assertEqual(in_span(space, {}), [0, 0])

    def test_reduces_dependent_vectors(self):
        space = Subspace(2, [{0: 1}, {0: 3}, {1: 1}])
        self.assertEqual(space.dim, 2)
        self.assertEqual(space.basis, ({0: 1}, {1: 1}))

    def test_empty(self):
        space = Subspace(2)
        self.assertEqual(space.coordinates({}), [])
        self.assertIsNone(space.coordinates({1: 1}))

    def test_contains_subspace(self):
        big = Subspace(3, [{0: 1}, {1: 1}])
        small = Subspace(3, [{0: 1, 1: -1}])
        self.assertTrue(big.contains_subspace(small))
        self.assertFalse(small.contains_subspace(big))

    def test_json(self):
        space = Subspace(2, [{0: Fraction(1, 2)}])
        self.assertEqual(Subspace.from_json(space.to_json()).basis, space.basis)


class QuotientTest(TestCase):
    def test_coordinates(self):
        cycles = Subspace(3, [{0: 1}, {1: 1}])
        boundaries = Subspace(3, [{0: 1, 1: 1}])
        quotient = Quotient(cycles, boundaries)
        self.assertEqual(quotient.dim, 1)
        self.assertEqual(quotient.complement, ({0: 1},))
        self.assertEqual(quotient.coordinates({0: 1, 1: 1}), [0])
        self.assertEqual(quotient.coordinates({1: 1}), [-1])
        self.assertEqual(quotient_coordinates(cycles, boundaries, {0: 3}), [3])

    def test_not_a_cycle(self):
        quotient = Quotient(Subspace(2, [{0: 1}]), Subspace(2))
        with self.assertRaises(NotACycle) as cm:
            quotient.coordinates({1: 1})
        self.assertEqual(str(cm.exception), "Vector is not a cycle")

    def test_not_a_subspace(self):
        with self.assertRaises(NotASubspace):
            Quotient(Subspace(2, [{0: 1}]), Subspace(2, [{1: 1}]))

    def test_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            Quotient(Subspace(2), Subspace(3))
