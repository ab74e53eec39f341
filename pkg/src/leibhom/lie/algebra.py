import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator, Mapping, Optional, Sequence

from ..basis import BasisIndexer, BasisKind
from ..exactla import (
    ONE,
    SparseMatrix,
    Subspace,
    Vector,
    add_scaled,
    format_rational,
    kernel_basis,
    kron,
    parse_rational,
    rank,
    to_rational,
    vstack,
)
from ..exceptions import AlgebraMismatch, DimensionMismatch, InputError, InvalidAlgebra

logger = logging.getLogger("leibhom.lie")


class LieAlgebra:
    """
    A finite-dimensional Lie algebra over the rationals.

    The bracket is given by structure constants
    `[b_i, b_j] = sum_k c(i, j, k) b_k`. A pair `(i, j)` which is not listed
    is filled in from `(j, i)` by antisymmetry; when both are listed they are
    kept as given, so that :func:`check_algebra` can report inconsistencies.
    """

    def __init__(
        self,
        basis: Sequence[str],
        brackets: Optional[Mapping[tuple[int, int], Mapping[int, Any]]] = None,
        *,
        name: str = "",
    ) -> None:
        self.name = name
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("Basis labels must be unique")

        dim = len(self.basis)
        self._given: dict[tuple[int, int], Vector] = {}
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch("Bracket (%d, %d) out of range" % (i, j))
            vector: Vector = {}
            for k, value in coeffs.items():
                if not 0 <= k < dim:
                    raise DimensionMismatch("Bracket component %d out of range" % k)
                q = to_rational(value)
                if q:
                    vector[k] = q
            if vector:
                self._given[(i, j)] = vector

        self._table: dict[tuple[int, int], Vector] = dict(self._given)
        for (i, j), vector in self._given.items():
            if (j, i) not in self._given:
                self._table[(j, i)] = {k: -v for k, v in vector.items()}

    def __repr__(self) -> str:
        return "<LieAlgebra %s dim=%d>" % (self.name or "?", self.dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        return self.basis.index(label)

    def bracket(self, i: int, j: int) -> Vector:
        """
        Return `[b_i, b_j]` as a sparse vector. The result must not be modified.
        """
        return self._table.get((i, j), {})

    def bracket_vectors(
        self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]
    ) -> Vector:
        result: Vector = {}
        for i, x in u.items():
            for j, y in v.items():
                add_scaled(result, self.bracket(i, j), x * y)
        return result

    def structure_constants(self) -> Iterator[tuple[int, int, int, Fraction]]:
        for (i, j) in sorted(self._table):
            vector = self._table[(i, j)]
            for k in sorted(vector):
                yield i, j, k, vector[k]

    def ad(self, i: int) -> SparseMatrix:
        """
        Return the matrix of `ad b_i = [b_i, -]`.
        """
        return SparseMatrix.from_columns(
            self.dim, [self.bracket(i, j) for j in range(self.dim)]
        )

    def is_abelian(self) -> bool:
        return not self._table

    def derived_dim(self) -> int:
        """
        Return the dimension of `[g, g]`.
        """
        return Subspace(self.dim, list(self._table.values())).dim

    def same_structure(self, other: "LieAlgebra") -> bool:
        return self is other or (
            self.basis == other.basis and self._table == other._table
        )

    def to_json(self) -> dict[str, Any]:
        brackets = []
        for (i, j) in sorted(self._given):
            brackets.append(
                {
                    "i": i,
                    "j": j,
                    "coeffs": {
                        str(k): format_rational(v)
                        for k, v in sorted(self._given[(i, j)].items())
                    },
                }
            )
        data: dict[str, Any] = {
            "dim": self.dim,
            "basis": list(self.basis),
            "brackets": brackets,
        }
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "LieAlgebra":
        try:
            basis = [str(label) for label in data["basis"]]
            dim = int(data["dim"])
            brackets = {}
            for item in data.get("brackets", []):
                key = (int(item["i"]), int(item["j"]))
                brackets[key] = {
                    int(k): parse_rational(str(v)) for k, v in item["coeffs"].items()
                }
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("Malformed algebra: %s" % exc) from exc
        if dim != len(basis):
            raise InputError(
                "Algebra dimension %d does not match %d basis labels"
                % (dim, len(basis))
            )
        try:
            return cls(basis, brackets, name=str(data.get("name", "")))
        except ValueError as exc:
            raise InputError("Malformed algebra: %s" % exc) from exc


class Representation:
    """
    An action of a Lie algebra on a finite-dimensional vector space, given
    by one matrix per basis element of the algebra.
    """

    def __init__(
        self,
        algebra: LieAlgebra,
        matrices: Sequence[SparseMatrix],
        *,
        labels: Optional[Sequence[str]] = None,
        name: str = "",
    ) -> None:
        if len(matrices) != algebra.dim:
            raise DimensionMismatch(
                "Expected %d action matrices, got %d" % (algebra.dim, len(matrices))
            )
        if labels is not None:
            dim = len(labels)
        elif matrices:
            dim = matrices[0].rows
        else:
            raise ValueError("Labels are required for representations of a zero algebra")
        for matrix in matrices:
            if matrix.shape != (dim, dim):
                raise DimensionMismatch(
                    "Action matrices must be %dx%d, got %dx%d"
                    % (dim, dim, matrix.rows, matrix.cols)
                )
        self.algebra = algebra
        self.matrices = tuple(matrices)
        self.labels = tuple(labels) if labels is not None else tuple(
            "v%d" % (i + 1) for i in range(dim)
        )
        self.name = name

    def __repr__(self) -> str:
        return "<Representation %s of %s dim=%d>" % (
            self.name or "?",
            self.algebra.name or "?",
            self.dim,
        )

    @property
    def dim(self) -> int:
        return len(self.labels)

    def action(self, i: int) -> SparseMatrix:
        return self.matrices[i]

    def act(self, i: int, vector: Mapping[int, Fraction]) -> Vector:
        return self.matrices[i].apply(vector)

    def element_action(self, element: Mapping[int, Fraction]) -> SparseMatrix:
        """
        Return the matrix of a linear combination of basis elements.
        """
        result = SparseMatrix.zeros(self.dim, self.dim)
        for i, x in element.items():
            result = result + self.matrices[i].scale(x)
        return result

    def to_json(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "basis": list(self.labels),
            "action": [
                {"generator": i, "entries": matrix.to_triples()}
                for i, matrix in enumerate(self.matrices)
                if not matrix.is_zero()
            ],
        }

    @classmethod
    def from_json(cls, algebra: LieAlgebra, data: Mapping[str, Any]) -> "Representation":
        try:
            labels = [str(label) for label in data["basis"]]
            dim = int(data["dim"])
            if dim != len(labels):
                raise InputError(
                    "Representation dimension %d does not match %d basis labels"
                    % (dim, len(labels))
                )
            entries: list[dict[tuple[int, int], Fraction]] = [
                {} for _ in range(algebra.dim)
            ]
            for item in data.get("action", []):
                generator = int(item["generator"])
                for r, c, value in item["entries"]:
                    entries[generator][(int(r), int(c))] = parse_rational(str(value))
            matrices = [SparseMatrix(dim, dim, e) for e in entries]
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise InputError("Malformed representation: %s" % exc) from exc
        return cls(algebra, matrices, labels=labels)


@dataclass
class ValidationFailure:
    kind: str
    "One of `antisymmetry`, `jacobi` or `representation`."

    indices: tuple[int, ...]
    "The basis indices involved."

    message: str


@dataclass
class ValidationReport:
    """
    Outcome of validating a Lie algebra or a representation.
    """

    name: str
    failures: list[ValidationFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "failures": [
                {"kind": f.kind, "indices": list(f.indices), "message": f.message}
                for f in self.failures
            ],
        }

    def render_text(self) -> str:
        if self.ok:
            return "%s: ok" % self.name
        lines = ["%s: %d failure(s)" % (self.name, len(self.failures))]
        lines.extend("  %s %s: %s" % (f.kind, f.indices, f.message) for f in self.failures)
        return "\n".join(lines)


def check_algebra(algebra: LieAlgebra) -> ValidationReport:
    """
    Check antisymmetry and the Jacobi identity on all basis pairs and triples.
    """
    report = ValidationReport(name=algebra.name or "algebra")
    labels = algebra.basis
    dim = algebra.dim

    for i in range(dim):
        if (i, i) in algebra._given:
            report.failures.append(
                ValidationFailure(
                    kind="antisymmetry",
                    indices=(i, i),
                    message="[%s, %s] is not zero" % (labels[i], labels[i]),
                )
            )
        for j in range(i + 1, dim):
            if (i, j) in algebra._given and (j, i) in algebra._given:
                forward = algebra._given[(i, j)]
                backward = algebra._given[(j, i)]
                if forward != {k: -v for k, v in backward.items()}:
                    report.failures.append(
                        ValidationFailure(
                            kind="antisymmetry",
                            indices=(i, j),
                            message="[%s, %s] != -[%s, %s]"
                            % (labels[i], labels[j], labels[j], labels[i]),
                        )
                    )

    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                total: Vector = {}
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = algebra.bracket(x, y)
                    add_scaled(total, algebra.bracket_vectors(inner, {z: ONE}), ONE)
                if total:
                    report.failures.append(
                        ValidationFailure(
                            kind="jacobi",
                            indices=(i, j, k),
                            message="Jacobi identity fails for (%s, %s, %s)"
                            % (labels[i], labels[j], labels[k]),
                        )
                    )
    return report


def check_representation(rep: Representation) -> ValidationReport:
    """
    Check `rho([x, y]) = rho(x) rho(y) - rho(y) rho(x)` on all basis pairs.
    """
    report = ValidationReport(name=rep.name or "representation")
    algebra = rep.algebra
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            lhs = rep.element_action(algebra.bracket(i, j))
            rhs = rep.matrices[i] @ rep.matrices[j] - rep.matrices[j] @ rep.matrices[i]
            if lhs != rhs:
                report.failures.append(
                    ValidationFailure(
                        kind="representation",
                        indices=(i, j),
                        message="rho([%s, %s]) != [rho(%s), rho(%s)]"
                        % (
                            algebra.basis[i],
                            algebra.basis[j],
                            algebra.basis[i],
                            algebra.basis[j],
                        ),
                    )
                )
    return report


# representations


def adjoint_rep(algebra: LieAlgebra) -> Representation:
    return Representation(
        algebra,
        [algebra.ad(i) for i in range(algebra.dim)],
        labels=algebra.basis,
        name="adjoint",
    )


def trivial_rep(algebra: LieAlgebra, dim: int, labels: Optional[Sequence[str]] = None) -> Representation:
    if labels is None:
        labels = ["t%d" % (i + 1) for i in range(dim)]
    return Representation(
        algebra,
        [SparseMatrix.zeros(dim, dim) for _ in range(algebra.dim)],
        labels=labels,
        name="trivial",
    )


def _word_rep(rep: Representation, kind: BasisKind, k: int, separator: str) -> Representation:
    indexer = BasisIndexer(kind, rep.dim, k)
    labels = [separator.join(rep.labels[a] for a in w) or "1" for w in indexer]
    return Representation(
        rep.algebra,
        [indexer.action_matrix(m) for m in rep.matrices],
        labels=labels,
        name="%s^%s%d" % (rep.name or "V", separator, k),
    )


def tensor_rep(rep: Representation, k: int) -> Representation:
    """
    Return the derivation action on the `k`-th tensor power.
    """
    return _word_rep(rep, BasisKind.TENSOR, k, "*")


def wedge_rep(rep: Representation, k: int) -> Representation:
    """
    Return the derivation action on the `k`-th exterior power.
    """
    return _word_rep(rep, BasisKind.WEDGE, k, "^")


def dual_rep(rep: Representation) -> Representation:
    """
    Return the contragredient action `-rho(x)^T`.
    """
    return Representation(
        rep.algebra,
        [-m.transpose() for m in rep.matrices],
        labels=[label + "*" for label in rep.labels],
        name="%s*" % (rep.name or "V"),
    )


def _check_same_algebra(algebra: LieAlgebra, *reps: Representation) -> None:
    for rep in reps:
        if not algebra.same_structure(rep.algebra):
            raise AlgebraMismatch("Representations of different Lie algebras")


def tensor_product(v: Representation, w: Representation) -> Representation:
    """
    Return `V (x) W`, with basis index `i * dim W + j`.
    """
    _check_same_algebra(v.algebra, w)
    iv = SparseMatrix.identity(v.dim)
    iw = SparseMatrix.identity(w.dim)
    return Representation(
        v.algebra,
        [kron(a, iw) + kron(iv, b) for a, b in zip(v.matrices, w.matrices)],
        labels=["%s*%s" % (x, y) for x in v.labels for y in w.labels],
        name="%s*%s" % (v.name or "V", w.name or "W"),
    )


def killing_form(algebra: LieAlgebra) -> SparseMatrix:
    """
    Return the matrix `B(i, j) = trace(ad b_i ad b_j)`.
    """
    ads = [algebra.ad(i) for i in range(algebra.dim)]
    transposed = [a.transpose() for a in ads]
    entries = {}
    for i in range(algebra.dim):
        for j in range(i, algebra.dim):
            # trace(A B) = sum over entries of A * B^T
            value = Fraction(0)
            for r, c, x in ads[i].entries():
                value += x * transposed[j][(r, c)]
            if value:
                entries[(i, j)] = value
                entries[(j, i)] = value
    return SparseMatrix(algebra.dim, algebra.dim, entries)


def is_semisimple(algebra: LieAlgebra) -> bool:
    return rank(killing_form(algebra)) == algebra.dim


def invariants(rep: Representation) -> Subspace:
    """
    Return a basis of the vectors annihilated by every basis element.
    """
    if rep.algebra.dim == 0:
        return Subspace(rep.dim, [{i: ONE} for i in range(rep.dim)], independent=True)
    return kernel_basis(vstack(list(rep.matrices), cols=rep.dim))


def equivariant_maps(v: Representation, w: Representation) -> list[SparseMatrix]:
    """
    Return a basis of `Hom_g(V, W)` as `dim W` x `dim V` matrices.
    """
    _check_same_algebra(v.algebra, w)
    space = invariants(tensor_product(dual_rep(v), w))
    maps = []
    for vector in space.basis:
        entries = {}
        for index, value in vector.items():
            i, j = divmod(index, w.dim)
            entries[(j, i)] = value
        maps.append(SparseMatrix(w.dim, v.dim, entries))
    return maps


def equivariant_hom_dim(algebra: LieAlgebra, v: Representation, w: Representation) -> int:
    """
    Return `dim Hom_g(V, W)`, computed as the dimension of `(V* (x) W)^g`.
    """
    _check_same_algebra(algebra, v, w)
    return invariants(tensor_product(dual_rep(v), w)).dim


def is_equivariant(matrix: SparseMatrix, v: Representation, w: Representation) -> bool:
    """
    Return whether `matrix`, a map from V to W, commutes with the action.
    """
    return all(
        mw @ matrix == matrix @ mv for mv, mw in zip(v.matrices, w.matrices)
    )


# extensions


@dataclass
class AbelianExtension:
    """
    The extension `0 -> I -> h -> g -> 0` with `h = g x| I`.

    The basis of `h` lists the basis of `g` first, then the basis of `I`.
    """

    g: LieAlgebra
    "The quotient Lie algebra."

    rep: Representation
    "The action of `g` on the Abelian ideal `I`."

    h: LieAlgebra
    "The extension, with `[g1 + a, g2 + b] = [g1, g2] + g1.b - g2.a`."

    name: str = ""

    @property
    def ideal_dim(self) -> int:
        return self.rep.dim

    @property
    def g_indices(self) -> range:
        return range(self.g.dim)

    @property
    def ideal_indices(self) -> range:
        return range(self.g.dim, self.h.dim)

    def embed_ideal(self, a: int) -> int:
        return self.g.dim + a

    def project(self, x: int) -> Optional[int]:
        return x if x < self.g.dim else None

    @cached_property
    def ideal(self) -> LieAlgebra:
        """
        The ideal `I` as an Abelian Lie algebra.
        """
        return LieAlgebra(self.rep.labels, name="I")

    @cached_property
    def ideal_action_on_h(self) -> Representation:
        """
        The action `a.x = [a, x]` of `I` on `h`.
        """
        return Representation(
            self.ideal,
            [self.h.ad(self.embed_ideal(a)) for a in range(self.ideal_dim)],
            labels=self.h.basis,
            name="h",
        )

    @cached_property
    def g_action_on_h(self) -> Representation:
        """
        The restriction to `g` of the adjoint action of `h`.
        """
        return Representation(
            self.g,
            [self.h.ad(i) for i in self.g_indices],
            labels=self.h.basis,
            name="h",
        )

    @cached_property
    def h_adjoint(self) -> Representation:
        return adjoint_rep(self.h)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "algebra": self.g.to_json(),
            "representation": self.rep.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "AbelianExtension":
        try:
            g = LieAlgebra.from_json(data["algebra"])
            rep = Representation.from_json(g, data["representation"])
        except KeyError as exc:
            raise InputError("Malformed extension: missing %s" % exc) from exc
        return semidirect(g, rep, name=str(data.get("name", "")))


def semidirect(
    g: LieAlgebra, rep: Representation, *, name: str = "", check: bool = True
) -> AbelianExtension:
    """
    Build `h = g x| I` from a representation of `g` on `I`.
    """
    if check:
        report = check_algebra(g)
        if report.ok:
            report = check_representation(rep)
        if not report.ok:
            raise InvalidAlgebra(report)
    _check_same_algebra(g, rep)

    n = g.dim
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            if g.bracket(i, j):
                brackets[(i, j)] = dict(g.bracket(i, j))
        for a, column in enumerate(rep.matrices[i].columns()):
            if column:
                brackets[(i, n + a)] = {n + b: value for b, value in column.items()}

    labels = list(g.basis) + list(rep.labels)
    h = LieAlgebra(labels, brackets, name=name or "%s+%s" % (g.name, rep.name))
    logger.debug("Built extension %s of dimension %d", h.name, h.dim)
    return AbelianExtension(g=g, rep=rep, h=h, name=name or h.name)
