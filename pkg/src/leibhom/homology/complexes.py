"""
Chain complexes, subcomplexes and chain maps.

Three families of complexes are spanned by basis words:

- the exterior complex `Lambda*(g)` with
  `d(g_1 ^ ... ^ g_n) = sum_(i<j) (-1)^j g_1 ^ ... ^ [g_i, g_j] ^ ... ^ ^g_j ^ ... ^ g_n`,
  the bracket replacing `g_i` and `g_j` being removed;
- the coefficient complex `M (x) Lambda*(L)`, given by the same formula with
  `g_1 = m` and `[m, a] = -a.m`;
- the Leibniz complex `T(g)`, given by the same formula on tensor words.

Degrees below zero are empty, and `d` into degree 0 vanishes for the exterior
and Leibniz complexes.
"""

import logging
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import Any, Callable, Iterator, Optional, Sequence

from ..basis import BasisIndexer, BasisKind, Word, permutation_sign, wedge_normalize
from ..configuration import HomologyConfiguration
from ..exactla import (
    SparseMatrix,
    Subspace,
    Vector,
    add_scaled,
    kernel_basis,
    vstack,
)
from ..exceptions import ChainMapError, DegreeOutOfRange, NotEquivariant
from ..lie.algebra import AbelianExtension, LieAlgebra, Representation, adjoint_rep
from ..lie.grading import Key, WordGrading, algebra_grading, module_grading
from ..logger import ComplexLoggerAdapter, ComputationTrace

logger = logging.getLogger("leibhom.complexes")

NO_KEY: Key = ()


class ChainComplex:
    """
    A chain complex of finite-dimensional rational vector spaces.

    Degrees are internal: the complex reports degree `n` as `n - shift`.
    Boundaries are built on demand up to `max_degree` and cached.
    """

    def __init__(
        self,
        name: str,
        max_degree: int,
        *,
        shift: int = 0,
        configuration: Optional[HomologyConfiguration] = None,
        trace: Optional[ComputationTrace] = None,
    ) -> None:
        if max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        self.name = name
        self.max_degree = max_degree
        self.shift = shift
        self.configuration = configuration or HomologyConfiguration()
        self.trace = trace

        self._boundaries: dict[int, SparseMatrix] = {}
        self._logger = ComplexLoggerAdapter(logger, {"name": name})

    def __repr__(self) -> str:
        return "<%s %s max_degree=%d>" % (
            self.__class__.__name__,
            self.name,
            self.max_degree,
        )

    def dim(self, n: int) -> int:
        raise NotImplementedError

    def keys(self, n: int) -> Optional[list[Key]]:
        """
        Return the grading key of every basis element in degree `n`, or `None`
        if the complex is not graded.
        """
        return None

    def reported_degree(self, n: int) -> int:
        return n - self.shift

    def internal_degree(self, n: int) -> int:
        return n + self.shift

    def check_degree(self, n: int) -> None:
        if not 0 <= n <= self.max_degree:
            raise DegreeOutOfRange(
                "Degree %d is outside the built range 0..%d of %s"
                % (n, self.max_degree, self.name)
            )

    def boundary(self, n: int) -> SparseMatrix:
        """
        Return the matrix of `d_n: C_n -> C_(n-1)`.
        """
        self.check_degree(n)
        if n not in self._boundaries:
            if n == 0:
                matrix = SparseMatrix.zeros(0, self.dim(0))
            else:
                matrix = self._build_boundary(n)
            self._boundaries[n] = matrix
            self._logger.debug(
                "Built boundary of degree %d: %dx%d with %d non-zeros",
                n,
                matrix.rows,
                matrix.cols,
                matrix.nnz,
            )
            if self.trace is not None:
                self.trace.log_event(
                    category="complex",
                    event="boundary_built",
                    data={
                        "cols": matrix.cols,
                        "complex": self.name,
                        "degree": n,
                        "nnz": matrix.nnz,
                        "rows": matrix.rows,
                    },
                )
        return self._boundaries[n]

    def _build_boundary(self, n: int) -> SparseMatrix:
        raise NotImplementedError

    def blocks(self, n: int) -> dict[Key, list[int]]:
        """
        Return the basis indices of degree `n` grouped by grading key, in
        increasing key order.
        """
        keys = self.keys(n)
        if keys is None:
            return {NO_KEY: list(range(self.dim(n)))} if self.dim(n) else {}
        groups: dict[Key, list[int]] = {}
        for index, key in enumerate(keys):
            groups.setdefault(key, []).append(index)
        return {key: groups[key] for key in sorted(groups)}

    def split(self, n: int, vector: Vector) -> dict[Key, Vector]:
        keys = self.keys(n)
        if keys is None:
            return {NO_KEY: dict(vector)} if vector else {}
        parts: dict[Key, Vector] = {}
        for index, value in vector.items():
            parts.setdefault(keys[index], {})[index] = value
        return parts

    def check_d_squared(self) -> bool:
        return all(
            (self.boundary(n - 1) @ self.boundary(n)).is_zero()
            for n in range(2, self.max_degree + 1)
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "boundaries": {
                str(n): self.boundary(n).to_triples()
                for n in range(1, self.max_degree + 1)
            },
            "dims": [self.dim(n) for n in range(self.max_degree + 1)],
            "name": self.name,
            "shift": self.shift,
        }


class BasisComplex(ChainComplex):
    """
    A complex whose chains are spanned by wedge, tensor or coefficient words
    in the letters of a Lie algebra.
    """

    def __init__(
        self,
        name: str,
        kind: BasisKind,
        algebra: LieAlgebra,
        max_degree: int,
        *,
        module: Optional[Representation] = None,
        grading: Optional[WordGrading] = None,
        configuration: Optional[HomologyConfiguration] = None,
        trace: Optional[ComputationTrace] = None,
    ) -> None:
        super().__init__(name, max_degree, configuration=configuration, trace=trace)
        self.kind = kind
        self.algebra = algebra
        self.module = module
        self.grading = grading if grading is not None and not grading.trivial else None

        self._indexers: dict[int, BasisIndexer] = {}
        self._keys: dict[int, list[Key]] = {}
        self._module_columns = (
            [m.columns() for m in module.matrices] if module is not None else None
        )

        pairs = comb(algebra.dim, 2)
        terms = sum(
            len(algebra.bracket(i, j))
            for i in range(algebra.dim)
            for j in range(i + 1, algebra.dim)
        )
        self._terms_per_pair = terms / pairs if pairs else 0.0
        if module is not None and module.dim and algebra.dim:
            self._terms_per_action = sum(m.nnz for m in module.matrices) / (
                module.dim * algebra.dim
            )
        else:
            self._terms_per_action = 0.0

    @property
    def space_dim(self) -> int:
        return self.algebra.dim

    @property
    def module_dim(self) -> Optional[int]:
        return self.module.dim if self.module is not None else None

    def indexer(self, n: int) -> BasisIndexer:
        if n not in self._indexers:
            self._indexers[n] = BasisIndexer(
                self.kind, self.space_dim, n, self.module_dim
            )
        return self._indexers[n]

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        return self.indexer(n).expected_size()

    def keys(self, n: int) -> Optional[list[Key]]:
        if self.grading is None:
            return None
        if n not in self._keys:
            with_module = self.kind == BasisKind.COEFF
            self._keys[n] = [
                self.grading.key(word, with_module=with_module)
                for word in self.indexer(n)
            ]
        return self._keys[n]

    def labels(self, n: int) -> list[str]:
        module_labels = self.module.labels if self.module is not None else None
        return self.indexer(n).labels(self.algebra.basis, module_labels)

    def estimate_nnz_per_column(self, n: int) -> float:
        if self.kind == BasisKind.COEFF:
            return max(1.0, comb(n, 2) * self._terms_per_pair + n * self._terms_per_action)
        return max(1.0, comb(n, 2) * self._terms_per_pair)

    def word_boundary(self, word: Word) -> Iterator[tuple[Word, Fraction]]:
        """
        Yield the terms of the boundary of a basis word, before normalization.
        """
        start = 1 if self.kind == BasisKind.COEFF else 0
        if start:
            m = word[0]
            for k in range(1, len(word)):
                # [m, a_k] = -a_k.m
                sign = 1 if k % 2 == 0 else -1
                rest = word[1:k] + word[k + 1 :]
                for target, value in self._module_columns[word[k]][m].items():
                    yield (target,) + rest, sign * value
        for q in range(start + 1, len(word)):
            # (-1)^j with j the 1-based position of the removed letter
            sign = 1 if q % 2 == 1 else -1
            for p in range(start, q):
                for k, value in self.algebra.bracket(word[p], word[q]).items():
                    yield word[:p] + (k,) + word[p + 1 : q] + word[q + 1 :], sign * value

    def normalize(self, letters: Word) -> tuple[int, Word]:
        """
        Return `(sign, word)` expressing `letters` as a multiple of a basis word.
        """
        if self.kind == BasisKind.TENSOR:
            return 1, letters
        if self.kind == BasisKind.WEDGE:
            return wedge_normalize(letters)
        sign, tail = wedge_normalize(letters[1:])
        return sign, letters[:1] + tail

    def vector(self, terms: dict[Word, Any]) -> Vector:
        """
        Return the vector of a linear combination of (unnormalized) words of
        one degree.
        """
        result: Vector = {}
        for letters, value in terms.items():
            sign, word = self.normalize(letters)
            if sign:
                indexer = self.indexer(len(word) - (self.kind == BasisKind.COEFF))
                add_scaled(result, {indexer.index(word): Fraction(value)}, Fraction(sign))
        return result

    def _build_boundary(self, n: int) -> SparseMatrix:
        source = self.indexer(n)
        target = self.indexer(n - 1)
        self.configuration.check_budget(
            n, len(source), self.estimate_nnz_per_column(n), trace=self.trace
        )
        columns: list[Vector] = []
        for word in source:
            column: Vector = {}
            for letters, value in self.word_boundary(word):
                sign, normal = self.normalize(letters)
                if sign:
                    index = target.index(normal)
                    column[index] = column.get(index, 0) + sign * value
            columns.append({i: Fraction(v) for i, v in column.items() if v})
        return SparseMatrix.from_columns(len(target), columns)


class SubComplex(ChainComplex):
    """
    A subcomplex of `ambient`, spanned in each degree by homogeneous vectors.

    `builder(n)` returns the basis vectors of degree `n` in ambient
    coordinates, grouped by grading key.
    """

    def __init__(
        self,
        name: str,
        ambient: ChainComplex,
        builder: Callable[[int], dict[Key, list[Vector]]],
        *,
        max_degree: Optional[int] = None,
        shift: int = 0,
        trace: Optional[ComputationTrace] = None,
    ) -> None:
        super().__init__(
            name,
            ambient.max_degree if max_degree is None else max_degree,
            shift=shift,
            configuration=ambient.configuration,
            trace=trace if trace is not None else ambient.trace,
        )
        self.ambient = ambient
        self._builder = builder
        self._bases: dict[int, tuple[list[Vector], list[Key]]] = {}
        self._spaces: dict[tuple[int, Key], tuple[Subspace, list[int]]] = {}

    def _basis(self, n: int) -> tuple[list[Vector], list[Key]]:
        if n not in self._bases:
            vectors: list[Vector] = []
            keys: list[Key] = []
            if n >= 0:
                for key, block in self._builder(n).items():
                    vectors.extend(block)
                    keys.extend([key] * len(block))
            self._bases[n] = (vectors, keys)
        return self._bases[n]

    def basis(self, n: int) -> list[Vector]:
        return self._basis(n)[0]

    def dim(self, n: int) -> int:
        return len(self._basis(n)[0])

    def keys(self, n: int) -> Optional[list[Key]]:
        if self.ambient.keys(n) is None:
            return None
        return self._basis(n)[1]

    def _space(self, n: int, key: Key) -> tuple[Subspace, list[int]]:
        if (n, key) not in self._spaces:
            vectors, keys = self._basis(n)
            positions = [i for i, k in enumerate(keys) if k == key]
            self._spaces[(n, key)] = (
                Subspace(
                    self.ambient.dim(n),
                    [vectors[i] for i in positions],
                    independent=True,
                ),
                positions,
            )
        return self._spaces[(n, key)]

    def coordinates(self, n: int, vector: Vector) -> Optional[Vector]:
        """
        Return the coordinates of an ambient vector of degree `n`, or `None`
        if it does not lie in the subcomplex.
        """
        result: Vector = {}
        for key, part in self.ambient.split(n, vector).items():
            space, positions = self._space(n, key)
            coords = space.coordinates(part)
            if coords is None:
                return None
            for position, value in zip(positions, coords):
                if value:
                    result[position] = value
        return result

    def include(self, n: int, vector: Vector) -> Vector:
        basis = self.basis(n)
        result: Vector = {}
        for index, value in vector.items():
            add_scaled(result, basis[index], value)
        return result

    def inclusion(self, n: int) -> SparseMatrix:
        return SparseMatrix.from_columns(self.ambient.dim(n), self.basis(n))

    def inclusion_map(self) -> "ChainMap":
        return ChainMap(
            self, self.ambient, 0, self.inclusion, name="%s->%s" % (self.name, self.ambient.name)
        )

    def _build_boundary(self, n: int) -> SparseMatrix:
        d = self.ambient.boundary(n)
        columns = []
        for vector in self.basis(n):
            image = d.apply(vector)
            coords = self.coordinates(n - 1, image) if image else {}
            if coords is None:
                raise ChainMapError(
                    "Boundary of degree %d leaves the subcomplex %s" % (n, self.name)
                )
            columns.append(coords)
        return SparseMatrix.from_columns(self.dim(n - 1), columns)


class ChainMap:
    """
    A chain map `f_n: C_n -> D_(n+shift)`.
    """

    def __init__(
        self,
        source: ChainComplex,
        target: ChainComplex,
        shift: int,
        builder: Callable[[int], SparseMatrix],
        *,
        name: str = "",
    ) -> None:
        self.source = source
        self.target = target
        self.shift = shift
        self.name = name
        self._builder = builder
        self._matrices: dict[int, SparseMatrix] = {}

    def __repr__(self) -> str:
        return "<ChainMap %s shift=%d>" % (self.name, self.shift)

    def matrix(self, n: int) -> SparseMatrix:
        if n not in self._matrices:
            rows = self.target.dim(n + self.shift) if n + self.shift >= 0 else 0
            cols = self.source.dim(n)
            if not rows or not cols:
                matrix = SparseMatrix.zeros(rows, cols)
            else:
                matrix = self._builder(n)
                if matrix.shape != (rows, cols):
                    raise ChainMapError(
                        "Map %s has shape %dx%d in degree %d, expected %dx%d"
                        % ((self.name, *matrix.shape, n, rows, cols))
                    )
            self._matrices[n] = matrix
        return self._matrices[n]

    def apply(self, n: int, vector: Vector) -> Vector:
        return self.matrix(n).apply(vector)

    def degrees(self) -> range:
        low = max(0, -self.shift)
        high = min(self.source.max_degree, self.target.max_degree - self.shift)
        return range(low, high + 1)

    def commutes(self, n: int) -> bool:
        """
        Return whether `d f_n = f_(n-1) d` holds in degree `n`.
        """
        left = self.target.boundary(n + self.shift) @ self.matrix(n)
        right = self.matrix(n - 1) @ self.source.boundary(n)
        return left == right

    def check(self) -> bool:
        return all(self.commutes(n) for n in self.degrees())


def compose(first: ChainMap, second: ChainMap) -> ChainMap:
    """
    Return `second o first`.
    """
    if first.target is not second.source:
        raise ChainMapError("Chain maps are not composable")
    return ChainMap(
        first.source,
        second.target,
        first.shift + second.shift,
        lambda n: second.matrix(n + first.shift) @ first.matrix(n),
        name="%s*%s" % (second.name, first.name),
    )


# complexes


def _configuration(
    configuration: Optional[HomologyConfiguration],
) -> HomologyConfiguration:
    return configuration or HomologyConfiguration()


def lie_complex(
    g: LieAlgebra,
    N: int,
    *,
    grading: Optional[WordGrading] = None,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> BasisComplex:
    configuration = _configuration(configuration)
    if grading is None and configuration.use_gradings:
        grading = algebra_grading(g)
    return BasisComplex(
        "lie(%s)" % g.name,
        BasisKind.WEDGE,
        g,
        N,
        grading=grading,
        configuration=configuration,
        trace=trace,
    )


def coeff_complex(
    L: LieAlgebra,
    M: Representation,
    N: int,
    *,
    grading: Optional[WordGrading] = None,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
    name: Optional[str] = None,
) -> BasisComplex:
    """
    Return the complex `M (x) Lambda*(L)` through degree `N`.
    """
    configuration = _configuration(configuration)
    if grading is None and configuration.use_gradings:
        grading = module_grading(L, M)
    return BasisComplex(
        name or "coeff(%s;%s)" % (L.name, M.name),
        BasisKind.COEFF,
        L,
        N,
        module=M,
        grading=grading,
        configuration=configuration,
        trace=trace,
    )


def leibniz_complex(
    g: LieAlgebra,
    N: int,
    *,
    grading: Optional[WordGrading] = None,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> BasisComplex:
    configuration = _configuration(configuration)
    if grading is None and configuration.use_gradings:
        grading = algebra_grading(g)
    return BasisComplex(
        "leibniz(%s)" % g.name,
        BasisKind.TENSOR,
        g,
        N,
        grading=grading,
        configuration=configuration,
        trace=trace,
    )


def adjoint_complex(
    g: LieAlgebra,
    N: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> BasisComplex:
    configuration = _configuration(configuration)
    grading = algebra_grading(g) if configuration.use_gradings else None
    return coeff_complex(
        g,
        adjoint_rep(g),
        N,
        grading=grading,
        configuration=configuration,
        trace=trace,
        name="adjoint(%s)" % g.name,
    )


def _ideal_grading(ext: AbelianExtension, with_module: bool) -> WordGrading:
    grading = algebra_grading(ext.h)
    letters = [grading.letter_weights[ext.embed_ideal(a)] for a in range(ext.ideal_dim)]
    return WordGrading(
        letters,
        grading.letter_weights if with_module else None,
        rational_width=grading.rational_width,
    )


def ideal_lie_complex(
    ext: AbelianExtension,
    N: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> BasisComplex:
    """
    Return `Lambda*(I)`, graded by the weights of `h`.
    """
    configuration = _configuration(configuration)
    return lie_complex(
        ext.ideal,
        N,
        grading=_ideal_grading(ext, False) if configuration.use_gradings else None,
        configuration=configuration,
        trace=trace,
    )


def ideal_coefficient_complex(
    ext: AbelianExtension,
    N: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> BasisComplex:
    """
    Return `h (x) Lambda*(I)`, the complex computing `H_*(I; h)`.
    """
    configuration = _configuration(configuration)
    return coeff_complex(
        ext.ideal,
        ext.ideal_action_on_h,
        N,
        grading=_ideal_grading(ext, True) if configuration.use_gradings else None,
        configuration=configuration,
        trace=trace,
        name="coeff(I;%s)" % ext.h.name,
    )


# chain maps between basis complexes


def word_map(
    source: BasisComplex,
    target: BasisComplex,
    *,
    letter_map: Optional[Sequence[int]] = None,
    name: str = "",
) -> ChainMap:
    """
    Return the map sending a basis word to the word with the same letters in
    `target`, letters of the space being renamed through `letter_map`.

    Module letters are kept: they must be letters of the target space, or of
    the target module.
    """
    source_coeff = source.kind == BasisKind.COEFF
    target_coeff = target.kind == BasisKind.COEFF
    shift = int(source_coeff) - int(target_coeff)

    def build(n: int) -> SparseMatrix:
        columns = []
        for word in source.indexer(n):
            head = word[:1] if source_coeff else ()
            tail = word[1:] if source_coeff else word
            if letter_map is not None:
                tail = tuple(letter_map[a] for a in tail)
            sign, normal = target.normalize(head + tail)
            if sign:
                index = target.indexer(n + shift).index(normal)
                columns.append({index: Fraction(sign)})
            else:
                columns.append({})
        return SparseMatrix.from_columns(target.dim(n + shift), columns)

    return ChainMap(source, target, shift, build, name=name)


def proj_pi(
    g: LieAlgebra,
    N: int,
    *,
    source: Optional[BasisComplex] = None,
    target: Optional[BasisComplex] = None,
    configuration: Optional[HomologyConfiguration] = None,
) -> ChainMap:
    """
    Return the projection `pi: g (x) Lambda^n(g) -> Lambda^(n+1)(g)`.
    """
    source = source or adjoint_complex(g, N, configuration=configuration)
    target = target or lie_complex(g, N + 1, configuration=configuration)
    return word_map(source, target, name="pi")


def proj_pi_prime(
    g: LieAlgebra,
    N: int,
    *,
    source: Optional[BasisComplex] = None,
    target: Optional[BasisComplex] = None,
    configuration: Optional[HomologyConfiguration] = None,
) -> ChainMap:
    """
    Return the projection `pi': g^(x n) -> Lambda^n(g)`.
    """
    source = source or leibniz_complex(g, N, configuration=configuration)
    target = target or lie_complex(g, N, configuration=configuration)
    return word_map(source, target, name="pi'")


def tensor_to_coeff(
    g: LieAlgebra,
    N: int,
    *,
    source: Optional[BasisComplex] = None,
    target: Optional[BasisComplex] = None,
    configuration: Optional[HomologyConfiguration] = None,
) -> ChainMap:
    """
    Return the projection `g^(x n+1) -> g (x) Lambda^n(g)`.

    Composed with :func:`proj_pi` it gives :func:`proj_pi_prime`.
    """
    source = source or leibniz_complex(g, N, configuration=configuration)
    target = target or adjoint_complex(g, max(N - 1, 0), configuration=configuration)
    return word_map(source, target, name="tensor->coeff")


def ideal_inclusion(
    ext: AbelianExtension, source: BasisComplex, target: BasisComplex
) -> ChainMap:
    """
    Return the inclusion `j: h (x) Lambda*(I) -> h (x) Lambda*(h)`.
    """
    return word_map(source, target, letter_map=list(ext.ideal_indices), name="j")


def extension_projection(
    ext: AbelianExtension, source: BasisComplex, target: BasisComplex
) -> ChainMap:
    """
    Return `pi o j: h (x) Lambda^n(I) -> Lambda^(n+1)(h)`.
    """
    return word_map(source, target, letter_map=list(ext.ideal_indices), name="pi.j")


def wedge_inclusion(
    ext: AbelianExtension, source: BasisComplex, target: BasisComplex
) -> ChainMap:
    return word_map(source, target, letter_map=list(ext.ideal_indices), name="incl")


# subcomplexes


def ker_subcomplex(
    f: ChainMap, *, shift: int = 0, name: Optional[str] = None
) -> SubComplex:
    """
    Return the kernel of a chain map as a subcomplex of its source.

    The map must preserve grading keys, so that the kernel is computed block
    by block.
    """
    source = f.source

    def build(n: int) -> dict[Key, list[Vector]]:
        matrix = f.matrix(n)
        blocks: dict[Key, list[Vector]] = {}
        for key, indices in source.blocks(n).items():
            local = kernel_basis(matrix.restrict(range(matrix.rows), indices))
            blocks[key] = [{indices[j]: v for j, v in vector.items()} for vector in local.basis]
        return blocks

    return SubComplex(name or "ker(%s)" % f.name, source, build, shift=shift)


def invariant_subcomplex(
    C: ChainComplex,
    action: Callable[[int], Sequence[SparseMatrix]],
    *,
    name: Optional[str] = None,
    check: bool = True,
) -> SubComplex:
    """
    Return the subcomplex of vectors annihilated by every matrix of
    `action(n)`.

    Each action matrix must be homogeneous with respect to the grading keys.
    """

    def build(n: int) -> dict[Key, list[Vector]]:
        matrices = list(action(n))
        if check and n >= 1:
            previous = list(action(n - 1))
            d = C.boundary(n)
            for upper, lower in zip(matrices, previous):
                if lower @ d != d @ upper:
                    raise NotEquivariant(
                        "Action does not commute with the boundary in degree %d" % n
                    )
        blocks: dict[Key, list[Vector]] = {}
        for key, indices in C.blocks(n).items():
            if not matrices:
                blocks[key] = [{i: Fraction(1)} for i in indices]
                continue
            stacked = vstack(
                [m.restrict(range(m.rows), indices) for m in matrices],
                cols=len(indices),
            )
            local = kernel_basis(stacked)
            blocks[key] = [{indices[j]: v for j, v in vector.items()} for vector in local.basis]
        return blocks

    return SubComplex(name or "inv(%s)" % C.name, C, build)


def cr_complex(
    g: LieAlgebra,
    N: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> SubComplex:
    """
    Return `CR_*(g) = Ker pi`, reported through degree `N`.
    """
    source = adjoint_complex(g, N + 1, configuration=configuration, trace=trace)
    target = lie_complex(g, N + 2, configuration=configuration, trace=trace)
    pi = proj_pi(g, N + 1, source=source, target=target)
    return ker_subcomplex(pi, shift=1, name="CR(%s)" % g.name)


def rel_complex(
    g: LieAlgebra,
    N: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> SubComplex:
    """
    Return `C^rel_*(g) = Ker pi'`, reported through degree `N`.
    """
    source = leibniz_complex(g, N + 2, configuration=configuration, trace=trace)
    target = lie_complex(g, N + 2, configuration=configuration, trace=trace)
    pi = proj_pi_prime(g, N + 2, source=source, target=target)
    return ker_subcomplex(pi, shift=2, name="Crel(%s)" % g.name)


# actions


def wedge_action(rep: Representation, complex: BasisComplex) -> Callable[[int], list[SparseMatrix]]:
    """
    Return the derivation action of `rep` on the exterior complex of its
    module, degree by degree.
    """

    def action(n: int) -> list[SparseMatrix]:
        indexer = complex.indexer(n)
        return [indexer.action_matrix(m) for m in rep.matrices]

    return action


def coefficient_action(
    ext: AbelianExtension, complex: BasisComplex
) -> Callable[[int], list[SparseMatrix]]:
    """
    Return the action of `g` on `h (x) Lambda^n(I)`.
    """
    h_matrices = ext.g_action_on_h.matrices

    def action(n: int) -> list[SparseMatrix]:
        indexer = complex.indexer(n)
        return [
            indexer.action_matrix(letter, module)
            for letter, module in zip(ext.rep.matrices, h_matrices)
        ]

    return action


def tensor_action(
    algebra: LieAlgebra, complex: BasisComplex
) -> Callable[[int], list[SparseMatrix]]:
    def action(n: int) -> list[SparseMatrix]:
        indexer = complex.indexer(n)
        return [indexer.action_matrix(algebra.ad(i)) for i in range(algebra.dim)]

    return action


def ideal_invariant_complex(
    ext: AbelianExtension,
    N: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> SubComplex:
    complex = ideal_coefficient_complex(
        ext, N, configuration=configuration, trace=trace
    )
    return invariant_subcomplex(
        complex, coefficient_action(ext, complex), name="inv(coeff(I;%s))" % ext.h.name
    )


def wedge_invariant_complex(
    ext: AbelianExtension,
    N: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> SubComplex:
    complex = ideal_lie_complex(ext, N, configuration=configuration, trace=trace)
    return invariant_subcomplex(
        complex, wedge_action(ext.rep, complex), name="inv(lie(I))"
    )


# lifts and symmetrizations


def zeta(ext: AbelianExtension, n: int) -> SparseMatrix:
    """
    Return `zeta: Lambda^(n+1)(I) -> h (x) Lambda^n(I)`,
    `a_0 ^ ... ^ a_n -> 1/(n+1) sum_i (-1)^i a_i (x) a_0 ^ ... ^a_i ^ ... ^ a_n`.
    """
    source = BasisIndexer(BasisKind.WEDGE, ext.ideal_dim, n + 1)
    target = BasisIndexer(BasisKind.COEFF, ext.ideal_dim, n, ext.h.dim)
    scale = Fraction(1, n + 1)
    columns = []
    for word in source:
        column: Vector = {}
        for i, a in enumerate(word):
            index = target.index((ext.embed_ideal(a),) + word[:i] + word[i + 1 :])
            column[index] = scale if i % 2 == 0 else -scale
        columns.append(column)
    return SparseMatrix.from_columns(len(target), columns)


def zeta_map(source: BasisComplex, target: BasisComplex, ext: AbelianExtension) -> ChainMap:
    """
    Return `zeta` as a chain map `Lambda*(I) -> h (x) Lambda*(I)` of shift -1.
    """
    return ChainMap(source, target, -1, lambda n: zeta(ext, n - 1), name="zeta")


def epsilon(ext: AbelianExtension, n: int) -> SparseMatrix:
    """
    Return `epsilon_n: h (x) Lambda^n(I) -> h^(x n+1)`,
    `b (x) a_1 ^ ... ^ a_n -> 1/n! sum_s sgn(s) b (x) a_s(1) (x) ... (x) a_s(n)`.
    """
    source = BasisIndexer(BasisKind.COEFF, ext.ideal_dim, n, ext.h.dim)
    target = BasisIndexer(BasisKind.TENSOR, ext.h.dim, n + 1)
    scale = Fraction(1, factorial(n))
    orders = [(order, permutation_sign(order)) for order in permutations(range(n))]
    columns = []
    for word in source:
        head, tail = word[0], [ext.embed_ideal(a) for a in word[1:]]
        column = {}
        for order, sign in orders:
            index = target.index((head,) + tuple(tail[p] for p in order))
            column[index] = sign * scale
        columns.append(column)
    return SparseMatrix.from_columns(len(target), columns)


def epsilon_map(source: BasisComplex, target: BasisComplex, ext: AbelianExtension) -> ChainMap:
    """
    Return `epsilon` as a chain map `h (x) Lambda*(I) -> T(h)` of shift 1.
    """
    return ChainMap(source, target, 1, lambda n: epsilon(ext, n), name="epsilon")


def skew_symmetrize(dim: int, k: int) -> SparseMatrix:
    """
    Return `a_1 ^ ... ^ a_k -> 1/k! sum_s sgn(s) a_s(1) (x) ... (x) a_s(k)`.
    """
    source = BasisIndexer(BasisKind.WEDGE, dim, k)
    target = BasisIndexer(BasisKind.TENSOR, dim, k)
    scale = Fraction(1, factorial(k))
    orders = [(order, permutation_sign(order)) for order in permutations(range(k))]
    columns = []
    for word in source:
        columns.append(
            {
                target.index(tuple(word[p] for p in order)): sign * scale
                for order, sign in orders
            }
        )
    return SparseMatrix.from_columns(len(target), columns)


def wedge_to_tensor(source: BasisComplex, target: BasisComplex) -> Callable[[int, Vector], Vector]:
    """
    Return the section of `pi'` sending a wedge word to the tensor word with
    the same (increasing) letters.
    """

    def lift(n: int, vector: Vector) -> Vector:
        wedge = source.indexer(n)
        tensor = target.indexer(n)
        return {tensor.index(wedge.word(i)): v for i, v in vector.items()}

    return lift


def wedge_to_coeff(source: BasisComplex, target: BasisComplex) -> Callable[[int, Vector], Vector]:
    """
    Return the section of `pi` sending `a_0 ^ ... ^ a_n` to
    `a_0 (x) a_1 ^ ... ^ a_n`.
    """

    def lift(n: int, vector: Vector) -> Vector:
        wedge = source.indexer(n)
        coeff = target.indexer(n - 1)
        return {coeff.index(wedge.word(i)): v for i, v in vector.items()}

    return lift
