"""
Exact sparse linear algebra over the rationals.

Vectors are dictionaries mapping an index to a non-zero
:class:`fractions.Fraction`. Rank and reduced row echelon forms are delegated
to sympy's :class:`~sympy.polys.matrices.DomainMatrix` over ``QQ`` using its
sparse representation, whose elimination is fraction-free for rational input.
"""

from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import DimensionMismatch, NotACycle, NotASubspace

Rational = Fraction
Vector = dict[int, Fraction]
VectorLike = Union[Mapping[int, Any], Sequence[Any]]

ONE = Fraction(1)
ZERO = Fraction(0)


def to_rational(value: Any) -> Fraction:
    """
    Convert an integer, a fraction or a ``"p/q"`` string to a fraction.

    Floating point values are refused.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError("Cannot convert %r to a rational number" % (value,))


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


# vectors


def as_vector(value: VectorLike, dim: int) -> Vector:
    """
    Return a sparse vector of length `dim`, validating indices.
    """
    if isinstance(value, Mapping):
        vector: Vector = {}
        for index, entry in value.items():
            if not 0 <= index < dim:
                raise DimensionMismatch(
                    "Index %d out of range for dimension %d" % (index, dim)
                )
            q = to_rational(entry)
            if q:
                vector[index] = q
        return vector

    if len(value) != dim:
        raise DimensionMismatch(
            "Vector has length %d, expected %d" % (len(value), dim)
        )
    return {i: to_rational(x) for i, x in enumerate(value) if x}


def add_scaled(target: Vector, source: Mapping[int, Fraction], scale: Fraction) -> None:
    """
    Perform `target += scale * source` in place.
    """
    if not scale:
        return
    for index, entry in source.items():
        value = target.get(index, ZERO) + scale * entry
        if value:
            target[index] = value
        else:
            target.pop(index, None)


def combine(terms: Iterable[tuple[Fraction, Mapping[int, Fraction]]]) -> Vector:
    """
    Return the linear combination of `(coefficient, vector)` pairs.
    """
    result: Vector = {}
    for scale, vector in terms:
        add_scaled(result, vector, scale)
    return result


def dense(vector: Mapping[int, Fraction], dim: int) -> list[Fraction]:
    return [vector.get(i, ZERO) for i in range(dim)]


def vector_to_json(vector: Mapping[int, Fraction]) -> list[list]:
    return [[index, format_rational(vector[index])] for index in sorted(vector)]


def vector_from_json(data: Iterable[Sequence[Any]]) -> Vector:
    return {int(index): parse_rational(str(value)) for index, value in data}


# matrices


class SparseMatrix:
    """
    A `rows` x `cols` matrix with rational entries.

    Only non-zero entries are stored, row by row. Instances are treated as
    immutable: every operation returns a new matrix.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Optional[Mapping[tuple[int, int], Any]] = None,
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("Matrix shape must be non-negative")
        self.rows = rows
        self.cols = cols
        self._data: dict[int, dict[int, Fraction]] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch(
                    "Entry (%d, %d) out of range for a %dx%d matrix"
                    % (i, j, rows, cols)
                )
            q = to_rational(value)
            if q:
                self._data.setdefault(i, {})[j] = q

    @classmethod
    def _from_data(
        cls, rows: int, cols: int, data: dict[int, dict[int, Fraction]]
    ) -> "SparseMatrix":
        matrix = cls.__new__(cls)
        matrix.rows = rows
        matrix.cols = cols
        matrix._data = {i: row for i, row in data.items() if row}
        return matrix

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls._from_data(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls._from_data(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Any]]) -> "SparseMatrix":
        ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("Rows of a matrix must have equal length")
            for j, value in enumerate(row):
                entries[(i, j)] = value
        return cls(len(rows), ncols, entries)

    @classmethod
    def from_columns(
        cls, rows: int, columns: Sequence[Mapping[int, Fraction]]
    ) -> "SparseMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                if not 0 <= i < rows:
                    raise DimensionMismatch(
                        "Index %d out of range for dimension %d" % (i, rows)
                    )
                if value:
                    data.setdefault(i, {})[j] = value
        return cls._from_data(rows, len(columns), data)

    @classmethod
    def from_rows(
        cls, cols: int, rows: Sequence[Mapping[int, Fraction]]
    ) -> "SparseMatrix":
        data = {}
        for i, row in enumerate(rows):
            data[i] = as_vector(row, cols)
        return cls._from_data(len(rows), cols, data)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data.get(i, {}).get(j, ZERO)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self) -> str:
        return "<SparseMatrix %dx%d nnz=%d>" % (self.rows, self.cols, self.nnz)

    def is_zero(self) -> bool:
        return not self._data

    def entries(self) -> Iterator[tuple[int, int, Fraction]]:
        for i in sorted(self._data):
            row = self._data[i]
            for j in sorted(row):
                yield i, j, row[j]

    def row(self, i: int) -> Vector:
        return dict(self._data.get(i, {}))

    def column(self, j: int) -> Vector:
        return {i: row[j] for i, row in self._data.items() if j in row}

    def columns(self) -> list[Vector]:
        result: list[Vector] = [{} for _ in range(self.cols)]
        for i, row in self._data.items():
            for j, value in row.items():
                result[j][i] = value
        return result

    def transpose(self) -> "SparseMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for i, row in self._data.items():
            for j, value in row.items():
                data.setdefault(j, {})[i] = value
        return SparseMatrix._from_data(self.cols, self.rows, data)

    def apply(self, vector: Mapping[int, Fraction]) -> Vector:
        """
        Return the product of this matrix with a sparse column vector.
        """
        result: Vector = {}
        for i, row in self._data.items():
            value = ZERO
            if len(row) < len(vector):
                for j, entry in row.items():
                    if j in vector:
                        value += entry * vector[j]
            else:
                for j, x in vector.items():
                    if j in row:
                        value += row[j] * x
            if value:
                result[i] = value
        return result

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                "Cannot multiply a %dx%d matrix by a %dx%d matrix"
                % (self.rows, self.cols, other.rows, other.cols)
            )
        data: dict[int, dict[int, Fraction]] = {}
        for i, row in self._data.items():
            acc: Vector = {}
            for k, a in row.items():
                other_row = other._data.get(k)
                if other_row:
                    add_scaled(acc, other_row, a)
            if acc:
                data[i] = acc
        return SparseMatrix._from_data(self.rows, other.cols, data)

    def _combine(self, other: "SparseMatrix", scale: Fraction) -> "SparseMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(
                "Cannot add a %dx%d matrix to a %dx%d matrix"
                % (other.rows, other.cols, self.rows, self.cols)
            )
        data = {i: dict(row) for i, row in self._data.items()}
        for i, row in other._data.items():
            target = data.setdefault(i, {})
            add_scaled(target, row, scale)
        return SparseMatrix._from_data(self.rows, self.cols, data)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, ONE)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -ONE)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-ONE)

    def scale(self, factor: Any) -> "SparseMatrix":
        q = to_rational(factor)
        if not q:
            return SparseMatrix.zeros(self.rows, self.cols)
        return SparseMatrix._from_data(
            self.rows,
            self.cols,
            {i: {j: q * v for j, v in row.items()} for i, row in self._data.items()},
        )

    def restrict(
        self, row_indices: Sequence[int], col_indices: Sequence[int]
    ) -> "SparseMatrix":
        """
        Return the submatrix on the given rows and columns, renumbered in the
        given order.
        """
        row_position = {r: p for p, r in enumerate(row_indices)}
        col_position = {c: p for p, c in enumerate(col_indices)}
        data: dict[int, dict[int, Fraction]] = {}
        for i, row in self._data.items():
            p = row_position.get(i)
            if p is None:
                continue
            for j, value in row.items():
                q = col_position.get(j)
                if q is not None:
                    data.setdefault(p, {})[q] = value
        return SparseMatrix._from_data(len(row_indices), len(col_indices), data)

    def to_dense(self) -> list[list[Fraction]]:
        return [dense(self._data.get(i, {}), self.cols) for i in range(self.rows)]

    def to_triples(self) -> list[list]:
        return [[i, j, format_rational(v)] for i, j, v in self.entries()]

    def to_json(self) -> dict[str, Any]:
        return {"rows": self.rows, "cols": self.cols, "entries": self.to_triples()}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SparseMatrix":
        entries = {}
        for i, j, value in data["entries"]:
            entries[(int(i), int(j))] = parse_rational(str(value))
        return cls(int(data["rows"]), int(data["cols"]), entries)


def vstack(matrices: Sequence[SparseMatrix], cols: Optional[int] = None) -> SparseMatrix:
    if cols is None:
        cols = matrices[0].cols if matrices else 0
    data: dict[int, dict[int, Fraction]] = {}
    offset = 0
    for matrix in matrices:
        if matrix.cols != cols:
            raise DimensionMismatch("Cannot stack matrices with different widths")
        for i, row in matrix._data.items():
            data[offset + i] = dict(row)
        offset += matrix.rows
    return SparseMatrix._from_data(offset, cols, data)


def hstack(matrices: Sequence[SparseMatrix], rows: Optional[int] = None) -> SparseMatrix:
    if rows is None:
        rows = matrices[0].rows if matrices else 0
    data: dict[int, dict[int, Fraction]] = {}
    offset = 0
    for matrix in matrices:
        if matrix.rows != rows:
            raise DimensionMismatch("Cannot join matrices with different heights")
        for i, row in matrix._data.items():
            target = data.setdefault(i, {})
            for j, value in row.items():
                target[offset + j] = value
        offset += matrix.cols
    return SparseMatrix._from_data(rows, offset, data)


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """
    Kronecker product, with row index `i * b.rows + k` and column index
    `j * b.cols + l`.
    """
    data: dict[int, dict[int, Fraction]] = {}
    for i, arow in a._data.items():
        for k, brow in b._data.items():
            target = data.setdefault(i * b.rows + k, {})
            for j, x in arow.items():
                for m, y in brow.items():
                    target[j * b.cols + m] = x * y
    return SparseMatrix._from_data(a.rows * b.rows, a.cols * b.cols, data)


# sympy bridge


def _to_domain_matrix(matrix: SparseMatrix) -> DomainMatrix:
    rep = {
        i: {j: QQ(v.numerator, v.denominator) for j, v in row.items()}
        for i, row in matrix._data.items()
    }
    return DomainMatrix(rep, matrix.shape, QQ)


def _from_domain_matrix(dm: DomainMatrix) -> SparseMatrix:
    rows, cols = dm.shape
    data: dict[int, dict[int, Fraction]] = {}
    for i, row in dm.to_sparse().rep.items():
        converted = {}
        for j, x in row.items():
            value = Fraction(int(QQ.numer(x)), int(QQ.denom(x)))
            if value:
                converted[j] = value
        if converted:
            data[i] = converted
    return SparseMatrix._from_data(rows, cols, data)


def rref(matrix: SparseMatrix) -> tuple[SparseMatrix, tuple[int, ...]]:
    """
    Return the reduced row echelon form of `matrix` and its pivot columns.
    """
    if matrix.is_zero():
        return SparseMatrix.zeros(matrix.rows, matrix.cols), ()
    reduced, pivots = _to_domain_matrix(matrix).rref()
    return _from_domain_matrix(reduced), tuple(pivots)


def rank(matrix: SparseMatrix) -> int:
    """
    Return the rank of `matrix` over the rationals.
    """
    if matrix.is_zero():
        return 0
    return _to_domain_matrix(matrix).rank()


def inverse(matrix: SparseMatrix) -> SparseMatrix:
    if matrix.rows != matrix.cols:
        raise DimensionMismatch("Only square matrices can be inverted")
    if rank(matrix) < matrix.rows:
        raise ValueError("Matrix is singular")
    if matrix.rows == 0:
        return matrix
    return _from_domain_matrix(_to_domain_matrix(matrix).inv())


def independent_columns(dim: int, vectors: Sequence[Mapping[int, Fraction]]) -> list[int]:
    """
    Return the indices of a maximal linearly independent subset of `vectors`,
    chosen greedily in the given order.
    """
    if not vectors:
        return []
    _, pivots = rref(SparseMatrix.from_columns(dim, vectors))
    return list(pivots)


def kernel_basis(matrix: SparseMatrix) -> "Subspace":
    """
    Return a basis of the right null space of `matrix`.

    There is one basis vector per non-pivot column of the reduced row echelon
    form, with a 1 in that column.
    """
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [j for j in range(matrix.cols) if j not in pivot_set]
    vectors: dict[int, Vector] = {j: {j: ONE} for j in free}
    for i, row in reduced._data.items():
        pivot = pivots[i]
        for j, value in row.items():
            if j != pivot:
                vectors[j][pivot] = -value
    return Subspace(matrix.cols, [vectors[j] for j in free], independent=True)


def column_space(matrix: SparseMatrix) -> "Subspace":
    """
    Return a basis of the column space made of columns of `matrix`.
    """
    if matrix.is_zero():
        return Subspace(matrix.rows)
    columns = matrix.columns()
    _, pivots = rref(matrix)
    return Subspace(matrix.rows, [columns[j] for j in pivots], independent=True)


class Subspace:
    """
    A subspace of the rational vector space of dimension `ambient_dim`.

    Unless `independent` is set, the given vectors are reduced to a greedily
    chosen independent subset, keeping their order.
    """

    def __init__(
        self,
        ambient_dim: int,
        vectors: Iterable[VectorLike] = (),
        *,
        independent: bool = False,
    ) -> None:
        basis = [as_vector(v, ambient_dim) for v in vectors]
        if not independent and basis:
            basis = [basis[i] for i in independent_columns(ambient_dim, basis)]
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(basis)
        self._solver: Optional[
            tuple[tuple[int, ...], list[Vector], list[Vector]]
        ] = None

    def __len__(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return "<Subspace dim=%d ambient=%d>" % (self.dim, self.ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_matrix(self) -> SparseMatrix:
        """
        Return the `ambient_dim` x `dim` matrix whose columns are the basis.
        """
        return SparseMatrix.from_columns(self.ambient_dim, self.basis)

    def _get_solver(self) -> tuple[tuple[int, ...], list[Vector], list[Vector]]:
        # rref of [B^T | I] yields R = E B^T with R in echelon form
        if self._solver is None:
            k = self.dim
            augmented = hstack(
                [
                    SparseMatrix.from_rows(self.ambient_dim, self.basis),
                    SparseMatrix.identity(k),
                ]
            )
            reduced, pivots = rref(augmented)
            echelon: list[Vector] = []
            transform: list[Vector] = []
            for i in range(k):
                row = reduced._data.get(i, {})
                echelon.append({j: v for j, v in row.items() if j < self.ambient_dim})
                transform.append(
                    {j - self.ambient_dim: v for j, v in row.items() if j >= self.ambient_dim}
                )
            self._solver = (pivots[:k], echelon, transform)
        return self._solver

    def coordinates(self, vector: VectorLike) -> Optional[list[Fraction]]:
        """
        Return the coefficients of `vector` in the basis, or `None` if the
        vector does not lie in the subspace.
        """
        v = as_vector(vector, self.ambient_dim)
        if not self.basis:
            return None if v else []
        pivots, echelon, transform = self._get_solver()
        residual = dict(v)
        echelon_coeffs = [v.get(p, ZERO) for p in pivots]
        for coeff, row in zip(echelon_coeffs, echelon):
            add_scaled(residual, row, -coeff)
        if residual:
            return None
        result = [ZERO] * self.dim
        for coeff, row in zip(echelon_coeffs, transform):
            if coeff:
                for j, value in row.items():
                    result[j] += coeff * value
        return result

    def contains(self, vector: VectorLike) -> bool:
        return self.coordinates(vector) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def to_json(self) -> dict[str, Any]:
        return {
            "ambient_dim": self.ambient_dim,
            "basis": [vector_to_json(v) for v in self.basis],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Subspace":
        return cls(
            int(data["ambient_dim"]), [vector_from_json(v) for v in data["basis"]]
        )


def in_span(space: Subspace, vector: VectorLike) -> Optional[list[Fraction]]:
    """
    Return the coefficients expressing `vector` in the basis of `space`, or
    `None` if it is not in the span.
    """
    return space.coordinates(vector)


class Quotient:
    """
    The quotient of `cycles` by `boundaries`.

    The boundary basis is extended greedily by cycle basis vectors, and the
    added vectors form the fixed complement in which class coordinates are
    expressed.
    """

    def __init__(self, cycles: Subspace, boundaries: Subspace) -> None:
        if cycles.ambient_dim != boundaries.ambient_dim:
            raise DimensionMismatch("Cycles and boundaries live in different spaces")
        if not cycles.contains_subspace(boundaries):
            raise NotASubspace("Boundaries are not contained in cycles")
        self.cycles = cycles
        self.boundaries = boundaries
        self._combined = Subspace(
            cycles.ambient_dim, boundaries.basis + cycles.basis
        )
        self.complement = self._combined.basis[boundaries.dim :]

    @property
    def dim(self) -> int:
        return len(self.complement)

    def coordinates(self, vector: VectorLike) -> list[Fraction]:
        coeffs = self._combined.coordinates(vector)
        if coeffs is None:
            raise NotACycle()
        return coeffs[self.boundaries.dim :]


def quotient_coordinates(
    cycles: Subspace, boundaries: Subspace, vector: VectorLike
) -> list[Fraction]:
    """
    Return the coordinates of the class of `vector` in `cycles / boundaries`.
    """
    return Quotient(cycles, boundaries).coordinates(vector)
