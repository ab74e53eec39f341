"""
Classical Lie algebras, their standard representations and the Abelian
extensions built from them, together with explicit invariant chains.

Every matrix algebra acts on column vectors: the generator written
`x_i d/dx^j` is the elementary matrix `E_ij`, so `E_ij e_k = delta_jk e_i`,
and the bracket is the matrix commutator.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Any, Mapping, Optional, Protocol, Sequence

from ..basis import BasisIndexer, BasisKind, permutation_sign
from ..exactla import SparseMatrix, Subspace, Vector, add_scaled, rank
from ..exceptions import AlgebraMismatch, InputError
from ..series import PoincareSeries, predicted_series
from .algebra import (
    AbelianExtension,
    LieAlgebra,
    Representation,
    ValidationReport,
    check_algebra,
    check_representation,
    semidirect,
    trivial_rep,
)

DEFAULT_SERIES_DEGREE = 7


def elementary(n: int, i: int, j: int) -> SparseMatrix:
    """
    Return the `n` x `n` elementary matrix with a 1 in row `i`, column `j`
    (0-based).
    """
    return SparseMatrix(n, n, {(i, j): 1})


def _flatten(matrix: SparseMatrix) -> Vector:
    return {i * matrix.cols + j: v for i, j, v in matrix.entries()}


def matrix_algebra(
    name: str,
    labels: Sequence[str],
    matrices: Sequence[SparseMatrix],
    space_labels: Sequence[str],
) -> tuple[LieAlgebra, Representation]:
    """
    Return the Lie algebra spanned by `matrices` under the commutator, and its
    standard representation.
    """
    n = matrices[0].rows
    span = Subspace(n * n, [_flatten(m) for m in matrices])
    if span.dim != len(matrices):
        raise ValueError("Matrices of %s are linearly dependent" % name)

    brackets = {}
    for i, j in combinations(range(len(matrices)), 2):
        commutator = matrices[i] @ matrices[j] - matrices[j] @ matrices[i]
        coords = span.coordinates(_flatten(commutator))
        if coords is None:
            raise ValueError(
                "Matrices of %s are not closed under the commutator" % name
            )
        brackets[(i, j)] = {k: c for k, c in enumerate(coords) if c}

    algebra = LieAlgebra(labels, brackets, name=name)
    rep = Representation(algebra, list(matrices), labels=space_labels, name="standard")
    return algebra, rep


def _space_labels(n: int) -> list[str]:
    return ["d%d" % (i + 1) for i in range(n)]


def sl(n: int) -> tuple[LieAlgebra, Representation]:
    """
    Return `sl_n` with basis `E_ij` (i != j) then `H_i = E_ii - E_(i+1)(i+1)`.

    For `n = 2` the basis is labelled `e, f, h`.
    """
    if n < 2:
        raise ValueError("sl(n) requires n >= 2")
    labels = []
    matrices = []
    for i in range(n):
        for j in range(n):
            if i != j:
                labels.append("E%d%d" % (i + 1, j + 1))
                matrices.append(elementary(n, i, j))
    for i in range(n - 1):
        labels.append("H%d" % (i + 1))
        matrices.append(elementary(n, i, i) - elementary(n, i + 1, i + 1))
    if n == 2:
        labels = ["e", "f", "h"]
    return matrix_algebra("sl%d" % n, labels, matrices, _space_labels(n))


def so_index(n: int, i: int, j: int) -> int:
    """
    Return the basis index of `alpha_ij` (0-based, i < j) in :func:`so`.
    """
    return list(combinations(range(n), 2)).index((i, j))


def so(n: int) -> tuple[LieAlgebra, Representation]:
    """
    Return `so_n` with basis `alpha_ij = E_ij - E_ji`, i < j.
    """
    if n < 3:
        raise ValueError("so(n) requires n >= 3")
    labels = []
    matrices = []
    for i, j in combinations(range(n), 2):
        labels.append("a%d%d" % (i + 1, j + 1))
        matrices.append(elementary(n, i, j) - elementary(n, j, i))
    return matrix_algebra("so%d" % n, labels, matrices, _space_labels(n))


def sp(n: int) -> tuple[LieAlgebra, Representation]:
    """
    Return `sp_n` acting on `R^2n` with coordinates `x_1..x_n, y_1..y_n`.

    The basis is given by the families `x_k d/dy^k`, `y_k d/dx^k`,
    `x_i d/dy^j + x_j d/dy^i`, `y_i d/dx^j + y_j d/dx^i` (i < j) and
    `y_j d/dy^i - x_i d/dx^j`.
    """
    if n < 1:
        raise ValueError("sp(n) requires n >= 1")
    size = 2 * n

    def x(k: int) -> int:
        return k

    def y(k: int) -> int:
        return n + k

    labels = []
    matrices = []
    for k in range(n):
        labels.append("x%ddy%d" % (k + 1, k + 1))
        matrices.append(elementary(size, x(k), y(k)))
    for k in range(n):
        labels.append("y%ddx%d" % (k + 1, k + 1))
        matrices.append(elementary(size, y(k), x(k)))
    for i, j in combinations(range(n), 2):
        labels.append("x%ddy%d+x%ddy%d" % (i + 1, j + 1, j + 1, i + 1))
        matrices.append(elementary(size, x(i), y(j)) + elementary(size, x(j), y(i)))
    for i, j in combinations(range(n), 2):
        labels.append("y%ddx%d+y%ddx%d" % (i + 1, j + 1, j + 1, i + 1))
        matrices.append(elementary(size, y(i), x(j)) + elementary(size, y(j), x(i)))
    for i in range(n):
        for j in range(n):
            labels.append("y%ddy%d-x%ddx%d" % (j + 1, i + 1, i + 1, j + 1))
            matrices.append(elementary(size, y(j), y(i)) - elementary(size, x(i), x(j)))
    space_labels = ["dx%d" % (k + 1) for k in range(n)] + [
        "dy%d" % (k + 1) for k in range(n)
    ]
    return matrix_algebra("sp%d" % n, labels, matrices, space_labels)


def so31() -> tuple[LieAlgebra, Representation]:
    """
    Return `so(3,1)` with basis `alpha_ij = E_ij - E_ji` (i < j <= 3) and
    `beta_i4 = E_i4 + E_4i`.
    """
    labels = []
    matrices = []
    for i, j in combinations(range(3), 2):
        labels.append("a%d%d" % (i + 1, j + 1))
        matrices.append(elementary(4, i, j) - elementary(4, j, i))
    for i in range(3):
        labels.append("b%d4" % (i + 1))
        matrices.append(elementary(4, i, 3) + elementary(4, 3, i))
    return matrix_algebra("so31", labels, matrices, _space_labels(4))


def sl2c_real() -> tuple[LieAlgebra, Representation]:
    """
    Return `sl_2(C)` as a real Lie algebra inside `sl_4(R)`.
    """

    def e(i: int, j: int) -> SparseMatrix:
        return elementary(4, i - 1, j - 1)

    matrices = [
        e(1, 1) + e(2, 2) - e(3, 3) - e(4, 4),
        e(1, 2) - e(2, 1) - e(3, 4) + e(4, 3),
        e(1, 3) + e(2, 4),
        e(1, 4) - e(2, 3),
        e(3, 1) + e(4, 2),
        e(3, 2) - e(4, 1),
    ]
    labels = ["v%d" % (i + 1) for i in range(6)]
    return matrix_algebra("sl2c", labels, matrices, _space_labels(4))


def matrix_isomorphism(
    source: tuple[LieAlgebra, Representation],
    target: tuple[LieAlgebra, Representation],
) -> SparseMatrix:
    """
    Return the change of basis carrying a matrix algebra onto another one
    spanning the same matrices.

    Column `j` holds the coordinates of the `j`-th generator of `source` in
    the basis of `target`.

    :raises AlgebraMismatch: if the matrices span different algebras or the
        brackets are not preserved.
    """
    s_algebra, s_rep = source
    t_algebra, t_rep = target
    if s_rep.dim != t_rep.dim:
        raise AlgebraMismatch(
            "Standard representations of %s and %s act on different spaces"
            % (s_algebra.name, t_algebra.name)
        )
    span = Subspace(t_rep.dim**2, [_flatten(m) for m in t_rep.matrices])
    columns = []
    for i, matrix in enumerate(s_rep.matrices):
        coords = span.coordinates(_flatten(matrix))
        if coords is None:
            raise AlgebraMismatch(
                "Generator %s of %s does not lie in %s"
                % (s_algebra.basis[i], s_algebra.name, t_algebra.name)
            )
        columns.append({k: c for k, c in enumerate(coords) if c})
    phi = SparseMatrix.from_columns(t_algebra.dim, columns)
    if s_algebra.dim != t_algebra.dim or rank(phi) < t_algebra.dim:
        raise AlgebraMismatch("%s does not span %s" % (s_algebra.name, t_algebra.name))

    for i, j in combinations(range(s_algebra.dim), 2):
        image = phi.apply(s_algebra.bracket(i, j))
        if image != t_algebra.bracket_vectors(phi.column(i), phi.column(j)):
            raise AlgebraMismatch("Bracket (%d, %d) is not preserved" % (i, j))
    return phi


def sp_sl_isomorphism() -> SparseMatrix:
    """
    Return the isomorphism `sp_1 -> sl_2` in the bases of :func:`sp` and
    :func:`sl`.
    """
    return matrix_isomorphism(sp(1), sl(2))


# catalog entries


@dataclass
class CatalogEntry:
    """
    A named algebra or extension with the values its structure predicts.
    """

    name: str

    algebra: LieAlgebra
    """
    The algebra whose homology the entry describes: `h` for extensions.
    """

    representation: Optional[Representation] = None
    """
    The standard representation, whose exterior invariants are tabulated.
    """

    extension: Optional[AbelianExtension] = None

    expected_invariants: Optional[tuple[int, ...]] = None
    """
    Dimensions of `[Lambda^k(I)]^g` for `k = 0 .. dim I`.
    """

    expected_k: Optional[tuple[int, ...]] = None
    """
    Dimensions of `K_n` for `n = 0, 1, ...`.
    """

    expected_series: Optional[PoincareSeries] = None
    """
    Predicted Leibniz homology series of the algebra.
    """

    provenance: str = ""

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"name": self.name}
        if self.extension is not None:
            data["extension"] = self.extension.to_json()
        else:
            data["algebra"] = self.algebra.to_json()
            if self.representation is not None:
                data["representation"] = self.representation.to_json()
        if self.expected_invariants is not None:
            data["expected_invariants"] = list(self.expected_invariants)
        if self.expected_k is not None:
            data["expected_k"] = list(self.expected_k)
        if self.expected_series is not None:
            data["expected_series"] = self.expected_series.to_json()
        if self.provenance:
            data["provenance"] = self.provenance
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any], *, check: bool = True) -> "CatalogEntry":
        """
        Load an entry exported by :meth:`to_json`, or a bare algebra with an
        optional representation.

        :raises InputError: if the data does not follow the schema.
        :raises InvalidAlgebra: if `check` is set and an extension fails
            validation.
        """
        if not isinstance(data, Mapping):
            raise InputError("Expected a JSON object")
        name = str(data.get("name", ""))
        expected: dict[str, Any] = {}
        try:
            for key in ("expected_invariants", "expected_k"):
                if key in data:
                    expected[key] = tuple(int(x) for x in data[key])
            if "expected_series" in data:
                expected["expected_series"] = PoincareSeries(
                    tuple(int(x) for x in data["expected_series"])
                )
        except (TypeError, ValueError) as exc:
            raise InputError("Malformed expected values: %s" % exc) from exc

        if "extension" in data:
            extension_data = data["extension"]
            if not isinstance(extension_data, Mapping) or "algebra" not in extension_data:
                raise InputError("Malformed extension", position="extension")
            g = LieAlgebra.from_json(extension_data["algebra"])
            if "representation" not in extension_data:
                raise InputError("Missing representation", position="extension")
            rep = Representation.from_json(g, extension_data["representation"])
            extension = semidirect(
                g, rep, name=name or str(extension_data.get("name", "")), check=check
            )
            return cls(
                name=name or extension.name,
                algebra=extension.h,
                representation=rep,
                extension=extension,
                provenance=str(data.get("provenance", "")),
                **expected,
            )

        if "algebra" not in data:
            raise InputError("Expected an algebra or an extension")
        algebra = LieAlgebra.from_json(data["algebra"])
        representation = None
        if "representation" in data:
            representation = Representation.from_json(algebra, data["representation"])
        return cls(
            name=name or algebra.name,
            algebra=algebra,
            representation=representation,
            provenance=str(data.get("provenance", "")),
            **expected,
        )

    def validate(self) -> ValidationReport:
        """
        Check the algebra and the representation, or for an extension the
        quotient algebra and its action.
        """
        if self.extension is not None:
            algebra, rep = self.extension.g, self.extension.rep
        else:
            algebra, rep = self.algebra, self.representation
        report = check_algebra(algebra)
        if rep is not None:
            report.failures.extend(check_representation(rep).failures)
        report.name = self.name
        return report


def algebra_entry(
    name: str,
    pair: tuple[LieAlgebra, Representation],
    expected_invariants: Optional[Sequence[int]] = None,
    provenance: str = "",
) -> CatalogEntry:
    algebra, rep = pair
    return CatalogEntry(
        name=name,
        algebra=algebra,
        representation=rep,
        expected_invariants=(
            tuple(expected_invariants) if expected_invariants is not None else None
        ),
        provenance=provenance,
    )


def extension_entry(
    name: str,
    g: LieAlgebra,
    rep: Representation,
    expected_invariants: Sequence[int],
    expected_k: Sequence[int],
    provenance: str = "",
) -> CatalogEntry:
    extension = semidirect(g, rep, name=name)
    return CatalogEntry(
        name=name,
        algebra=extension.h,
        representation=rep,
        extension=extension,
        expected_invariants=tuple(expected_invariants),
        expected_k=tuple(expected_k),
        expected_series=predicted_series(
            expected_invariants, expected_k, DEFAULT_SERIES_DEGREE
        ),
        provenance=provenance,
    )


def affine(name: str, pair: tuple[LieAlgebra, Representation], **kwargs: Any) -> CatalogEntry:
    g, rep = pair
    return extension_entry(name, g, rep, **kwargs)


def poincare() -> CatalogEntry:
    """
    The Lie algebra of the Poincare group, `sl_2(C) x| R^4`.
    """
    return affine(
        "sl2c-affine",
        sl2c_real(),
        expected_invariants=(1, 0, 2, 0, 1),
        expected_k=(0, 0, 0, 0),
        provenance="no sl_2(C)-module maps from sl_2(C) to exterior powers",
    )


def affine_lorentz() -> CatalogEntry:
    """
    The Lie algebra of the affine Lorentz group, `so(3,1) x| R^4`.
    """
    return affine(
        "so31-affine",
        so31(),
        expected_invariants=(1, 0, 0, 0, 1),
        expected_k=(0, 0, 1, 0),
        provenance="one h-invariant generator in h^(x3), see omega_so31",
    )


def reductive_k_dims(d: int, count: int) -> tuple[int, ...]:
    """
    Return `dim Ker(I (x) Lambda^n(I) -> Lambda^(n+1)(I))` for `dim I = d`.
    """
    return tuple(d * comb(d, n) - comb(d, n + 1) for n in range(count))


def reductive(g: LieAlgebra, d: int, *, name: Optional[str] = None) -> CatalogEntry:
    """
    The reductive extension `g + R^d` with trivial action.
    """
    rep = trivial_rep(g, d)
    return extension_entry(
        name or "reductive-%s-d%d" % (g.name, d),
        g,
        rep,
        expected_invariants=tuple(comb(d, k) for k in range(d + 1)),
        expected_k=reductive_k_dims(d, DEFAULT_SERIES_DEGREE),
        provenance="trivial action, tensor algebra T(I)",
    )


class CatalogFactory(Protocol):
    def __call__(self) -> CatalogEntry: ...


_factories: dict[str, CatalogFactory] = {}


def create_catalog_entry(name: str) -> CatalogEntry:
    """
    Build the catalog entry named `name`.
    """
    try:
        factory = _factories[name]
    except KeyError:
        raise InputError(f"Unknown catalog entry: {name}")
    return factory()


def register_catalog_entry(name: str, factory: CatalogFactory) -> None:
    """
    Register a catalog entry named `name`.
    """
    _factories[name] = factory


def catalog_names() -> list[str]:
    return sorted(_factories)


register_catalog_entry(
    "sl2", lambda: algebra_entry("sl2", sl(2), (1, 0, 1), "volume form")
)
register_catalog_entry(
    "sl3", lambda: algebra_entry("sl3", sl(3), (1, 0, 0, 1), "volume form")
)
register_catalog_entry(
    "so3", lambda: algebra_entry("so3", so(3), (1, 0, 0, 1), "volume form")
)
register_catalog_entry(
    "so4", lambda: algebra_entry("so4", so(4), (1, 0, 0, 0, 1), "volume form")
)
register_catalog_entry(
    "sp1", lambda: algebra_entry("sp1", sp(1), (1, 0, 1), "symplectic form")
)
register_catalog_entry(
    "sp2",
    lambda: algebra_entry("sp2", sp(2), (1, 0, 1, 0, 1), "powers of the symplectic form"),
)
register_catalog_entry(
    "so31", lambda: algebra_entry("so31", so31(), (1, 0, 0, 0, 1), "volume form")
)
register_catalog_entry(
    "sl2c", lambda: algebra_entry("sl2c", sl2c_real(), (1, 0, 2, 0, 1), "two 2-forms")
)
register_catalog_entry(
    "sl2-affine",
    lambda: affine(
        "sl2-affine",
        sl(2),
        expected_invariants=(1, 0, 1),
        expected_k=(0, 0, 0),
        provenance="no sl_n-module maps from sl_n to exterior powers",
    ),
)
register_catalog_entry(
    "sl3-affine",
    lambda: affine(
        "sl3-affine",
        sl(3),
        expected_invariants=(1, 0, 0, 1),
        expected_k=(0, 0, 0, 0),
        provenance="no sl_n-module maps from sl_n to exterior powers",
    ),
)
register_catalog_entry(
    "so3-affine",
    lambda: affine(
        "so3-affine",
        so(3),
        expected_invariants=(1, 0, 0, 1),
        expected_k=(0, 1, 0, 0),
        provenance="one h-invariant generator in h^(x2), see omega_so_n",
    ),
)
register_catalog_entry(
    "so4-affine",
    lambda: affine(
        "so4-affine",
        so(4),
        expected_invariants=(1, 0, 0, 0, 1),
        expected_k=(0, 0, 1, 0, 0),
        provenance="one h-invariant generator in h^(x3), see omega_so_n",
    ),
)
register_catalog_entry(
    "sp1-affine",
    lambda: affine(
        "sp1-affine",
        sp(1),
        expected_invariants=(1, 0, 1),
        expected_k=(0, 0, 0),
        provenance="no sp_n-module maps from sp_n to exterior powers",
    ),
)
register_catalog_entry(
    "sp2-affine",
    lambda: affine(
        "sp2-affine",
        sp(2),
        expected_invariants=(1, 0, 1, 0, 1),
        expected_k=(0, 0, 0, 0, 0),
        provenance="no sp_n-module maps from sp_n to exterior powers",
    ),
)
register_catalog_entry("sl2c-affine", poincare)
register_catalog_entry("poincare", poincare)
register_catalog_entry("so31-affine", affine_lorentz)
register_catalog_entry("affine-lorentz", affine_lorentz)
register_catalog_entry(
    "reductive-sl2-d1", lambda: reductive(sl(2)[0], 1, name="reductive-sl2-d1")
)
register_catalog_entry(
    "reductive-sl2-d2", lambda: reductive(sl(2)[0], 2, name="reductive-sl2-d2")
)


# explicit chains


def skew_terms(letters: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    """
    Return the skew-symmetrization `1/k! sum sgn(s) a_s(1) (x) ... (x) a_s(k)`
    as a map from tensor words to coefficients.
    """
    k = len(letters)
    scale = Fraction(1, factorial(k))
    terms: dict[tuple[int, ...], Fraction] = {}
    for order in permutations(range(k)):
        word = tuple(letters[p] for p in order)
        terms[word] = terms.get(word, Fraction(0)) + permutation_sign(order) * scale
    return {w: c for w, c in terms.items() if c}


def shuffles(p: int, q: int) -> list[tuple[int, ...]]:
    """
    Return the `(p, q)` shuffles of `0 .. p+q-1`, as sequences `s(1) .. s(p+q)`.
    """
    n = p + q
    result = []
    for head in combinations(range(n), p):
        tail = tuple(i for i in range(n) if i not in head)
        result.append(head + tail)
    return result


class TensorChain:
    """
    Builds a vector in `h^(x k)` term by term.
    """

    def __init__(self, dim: int, degree: int) -> None:
        self.indexer = BasisIndexer(BasisKind.TENSOR, dim, degree)
        self.vector: Vector = {}

    def add(self, coefficient: Fraction, *parts: dict[tuple[int, ...], Fraction]) -> None:
        words: dict[tuple[int, ...], Fraction] = {(): coefficient}
        for part in parts:
            words = {
                w + v: c * d for w, c in words.items() for v, d in part.items()
            }
        for word, value in words.items():
            add_scaled(self.vector, {self.indexer.index(word): value}, Fraction(1))


def so_affine(n: int) -> AbelianExtension:
    g, rep = so(n)
    return semidirect(g, rep, name="so%d-affine" % n)


def _alpha(n: int, i: int, j: int) -> dict[tuple[int, ...], Fraction]:
    if i < j:
        return {(so_index(n, i, j),): Fraction(1)}
    return {(so_index(n, j, i),): Fraction(-1)}


def _skew_ideal(ext: AbelianExtension, indices: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    return skew_terms([ext.embed_ideal(i) for i in indices])


def lambda_so_n(n: int, ext: Optional[AbelianExtension] = None) -> Vector:
    """
    `sum over Sh(2, n-2) of sgn(s) alpha_s(1)s(2) (x) eps(d_s(3) ^ ... ^ d_s(n))`.
    """
    ext = ext or so_affine(n)
    chain = TensorChain(ext.h.dim, n - 1)
    for s in shuffles(2, n - 2):
        chain.add(
            Fraction(permutation_sign(s)),
            _alpha(n, s[0], s[1]),
            _skew_ideal(ext, s[2:]),
        )
    return chain.vector


def beta_so_n(n: int, ext: Optional[AbelianExtension] = None) -> Vector:
    """
    `(-1)^(n+1) sum over Sh(n-2, 2) of sgn(s) eps(d_s(1) ^ ... ^ d_s(n-2)) (x) alpha_s(n-1)s(n)`.
    """
    ext = ext or so_affine(n)
    chain = TensorChain(ext.h.dim, n - 1)
    for s in shuffles(n - 2, 2):
        chain.add(
            Fraction((-1) ** (n + 1) * permutation_sign(s)),
            _skew_ideal(ext, s[: n - 2]),
            _alpha(n, s[n - 2], s[n - 1]),
        )
    return chain.vector


def omega_so_n(n: int, ext: Optional[AbelianExtension] = None) -> Vector:
    """
    The h-invariant Leibniz cycle `lambda + beta` in `h^(x n-1)` for
    `h = so_n x| R^n`.
    """
    if n < 3:
        raise ValueError("omega_so_n requires n >= 3")
    ext = ext or so_affine(n)
    result = lambda_so_n(n, ext)
    add_scaled(result, beta_so_n(n, ext), Fraction(1))
    return result


def gamma_so_n(n: int, ext: Optional[AbelianExtension] = None) -> Vector:
    """
    `sum over Sh(n-2, 2) of sgn(s) eps(d_s(1) ^ ... ^ d_s(n-2)) (x) a(s)` with
    `a(s) = sum_i alpha_s(i)s(n-1) (x) alpha_s(i)s(n)`, a chain in `h^(x n)`.
    """
    ext = ext or so_affine(n)
    chain = TensorChain(ext.h.dim, n)
    for s in shuffles(n - 2, 2):
        sign = Fraction(permutation_sign(s))
        head = _skew_ideal(ext, s[: n - 2])
        for i in range(n - 2):
            chain.add(
                sign,
                head,
                _alpha(n, s[i], s[n - 2]),
                _alpha(n, s[i], s[n - 1]),
            )
    return chain.vector


# the displayed so(3,1) invariant, as (generator, wedge pair, sign) with
# generator-first terms followed by wedge-first terms
_SO31_TERMS = [
    ("a12", (3, 4), 1),
    ("a13", (2, 4), -1),
    ("a23", (1, 4), 1),
    ("b14", (2, 3), 1),
    ("b24", (1, 3), -1),
    ("b34", (1, 2), 1),
]


def omega_so31(ext: Optional[AbelianExtension] = None) -> Vector:
    """
    The h-invariant Leibniz cycle in `h^(x3)` for `h = so(3,1) x| R^4`.

    The vector field convention and the matrix convention differ by the
    intertwiner `d4 -> -d4`, so every term picks up `(-1)^(number of d4)`.
    """
    if ext is None:
        g, rep = so31()
        ext = semidirect(g, rep, name="so31-affine")
    chain = TensorChain(ext.h.dim, 3)
    for label, (a, b), sign in _SO31_TERMS:
        twist = -1 if 4 in (a, b) else 1
        generator = {(ext.h.index(label),): Fraction(1)}
        wedge = _skew_ideal(ext, (a - 1, b - 1))
        chain.add(Fraction(sign * twist), generator, wedge)
        chain.add(Fraction(-sign * twist), wedge, generator)
    return chain.vector


def omega_sp(n: int) -> Vector:
    """
    The symplectic form `sum_i dx_i ^ dy_i` in `Lambda^2(R^2n)`.
    """
    if n < 1:
        raise ValueError("omega_sp requires n >= 1")
    indexer = BasisIndexer(BasisKind.WEDGE, 2 * n, 2)
    return {indexer.index((i, n + i)): Fraction(1) for i in range(n)}
