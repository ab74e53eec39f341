"""
The invariants which determine the Leibniz homology of an Abelian extension
`h = g x| I`, and their comparison with direct computations.

`K_n` is the kernel of the map `H_n(I; h)^g -> H_(n+1)(h)` induced by the
inclusion `h (x) Lambda*(I) -> h (x) Lambda*(h)` followed by the projection
onto `Lambda*(h)`. When every class of `K` has an h-invariant representative
in the Leibniz complex, `HL_*(h)` is `[Lambda*(I)]^g (x) T(K)` with `K_n` in
degree `n + 1`.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Any, Optional

from ..basis import BasisIndexer, BasisKind
from ..configuration import HomologyConfiguration
from ..exactla import (
    SparseMatrix,
    Subspace,
    Vector,
    add_scaled,
    column_space,
    inverse,
    kernel_basis,
    rank,
    vector_to_json,
    vstack,
)
from ..exceptions import (
    ChainMapError,
    DimensionMismatch,
    NotEquivariant,
    SingularKillingForm,
)
from ..lie.algebra import AbelianExtension, adjoint_rep, is_equivariant, killing_form
from ..logger import ComputationTrace
from ..series import PoincareSeries, predicted_series
from .complexes import (
    BasisComplex,
    ChainMap,
    SubComplex,
    coefficient_action,
    compose,
    epsilon,
    extension_projection,
    ideal_coefficient_complex,
    invariant_subcomplex,
    leibniz_complex,
    lie_complex,
    tensor_action,
    wedge_invariant_complex,
    zeta,
)
from .homology import (
    HomologyDegree,
    homology,
    hr_homology,
    induced_on_homology,
    leibniz_homology,
    lie_homology,
    wedge_invariant_dims,
)
from .reports import (
    HRReport,
    HypothesisAClass,
    HypothesisAReport,
    SplittingReport,
    StructureReport,
)

logger = logging.getLogger("leibhom.structure")

Key = tuple[int, ...]


@dataclass
class KDegree:
    """
    `K_n` in one degree.
    """

    degree: int
    dim: int

    representatives: list[Vector]
    """
    g-invariant cycles of `h (x) Lambda^n(I)`, in the coordinates of that
    complex, whose classes form a basis of `K_n`.
    """

    homology_dim: int
    "The dimension of `H_n(I; h)^g`."

    image_rank: int
    "The rank of the map `H_n(I; h)^g -> H_(n+1)(h)`."

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "dim": self.dim,
            "homology_dim": self.homology_dim,
            "image_rank": self.image_rank,
            "representatives": [vector_to_json(v) for v in self.representatives],
        }


@dataclass
class KModule:
    name: str
    degrees: dict[int, KDegree] = field(default_factory=dict)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.degrees[n].dim for n in sorted(self.degrees))

    def to_json(self) -> dict[str, Any]:
        return {
            "degrees": [self.degrees[n].to_json() for n in sorted(self.degrees)],
            "dims": list(self.dims),
            "name": self.name,
        }


class ExtensionComputation:
    """
    The complexes of an extension needed to compute `K_n` for `n <= N`,
    built lazily and shared between degrees.
    """

    def __init__(
        self,
        ext: AbelianExtension,
        N: int,
        *,
        configuration: Optional[HomologyConfiguration] = None,
        trace: Optional[ComputationTrace] = None,
    ) -> None:
        self.ext = ext
        self.max_degree = N
        self.configuration = configuration or HomologyConfiguration()
        self.trace = trace

        self._k: dict[int, KDegree] = {}
        self._invariant_homology: dict[int, HomologyDegree] = {}
        self._tensor_actions: dict[int, list[SparseMatrix]] = {}
        self._tensor_invariants: dict[tuple[int, Key], Subspace] = {}
        self._tensor_solvers: dict[tuple[int, Key], Subspace] = {}

    @cached_property
    def coefficients(self) -> BasisComplex:
        "`h (x) Lambda*(I)`"
        return ideal_coefficient_complex(
            self.ext,
            self.max_degree + 1,
            configuration=self.configuration,
            trace=self.trace,
        )

    @cached_property
    def invariants(self) -> SubComplex:
        "`[h (x) Lambda*(I)]^g`"
        return invariant_subcomplex(
            self.coefficients,
            coefficient_action(self.ext, self.coefficients),
            name="inv(coeff(I;%s))" % self.ext.h.name,
        )

    @cached_property
    def lie(self) -> BasisComplex:
        "`Lambda*(h)`"
        return lie_complex(
            self.ext.h,
            self.max_degree + 2,
            configuration=self.configuration,
            trace=self.trace,
        )

    @cached_property
    def leibniz(self) -> BasisComplex:
        "`T(h)`"
        return leibniz_complex(
            self.ext.h,
            self.max_degree + 2,
            configuration=self.configuration,
            trace=self.trace,
        )

    @cached_property
    def projection(self) -> ChainMap:
        """
        The composite `[h (x) Lambda*(I)]^g -> Lambda*(h)` of shift 1.
        """
        return compose(
            self.invariants.inclusion_map(),
            extension_projection(self.ext, self.coefficients, self.lie),
        )

    def invariant_homology(self, n: int) -> HomologyDegree:
        "`H_n(I; h)^g`, with representatives."
        if n not in self._invariant_homology:
            self._invariant_homology[n] = homology(self.invariants, n)
        return self._invariant_homology[n]

    def k(self, n: int) -> KDegree:
        if n not in self._k:
            self._k[n] = self._compute_k(n)
        return self._k[n]

    def k_module(self, N: Optional[int] = None) -> KModule:
        top = self.max_degree if N is None else N
        return KModule(
            name=self.ext.name, degrees={n: self.k(n) for n in range(top + 1)}
        )

    def _compute_k(self, n: int) -> KDegree:
        source = self.invariant_homology(n)
        target = homology(self.lie, n + 1)
        induced = induced_on_homology(self.projection, n, source, target)
        kernel = kernel_basis(induced)

        reps = source.representatives
        representatives = []
        for coeffs in kernel.basis:
            sub: Vector = {}
            for i, value in coeffs.items():
                add_scaled(sub, reps[i], value)
            representatives.append(self.invariants.include(n, sub))

        result = KDegree(
            degree=n,
            dim=kernel.dim,
            representatives=representatives,
            homology_dim=source.dim,
            image_rank=source.dim - kernel.dim,
        )
        logger.info(
            "K_%d(%s) has dimension %d (H_%d(I;h)^g = %d)",
            n,
            self.ext.name,
            result.dim,
            n,
            result.homology_dim,
        )
        if self.trace is not None:
            self.trace.log_event(
                category="structure",
                event="k_computed",
                data={
                    "degree": n,
                    "dim": result.dim,
                    "extension": self.ext.name,
                    "homology_dim": result.homology_dim,
                },
            )
        return result

    # hypothesis A

    def _invariant_space(self, n: int, key: Key) -> Subspace:
        if (n, key) not in self._tensor_invariants:
            indices = self.leibniz.blocks(n).get(key, [])
            if n not in self._tensor_actions:
                self._tensor_actions[n] = tensor_action(self.ext.h, self.leibniz)(n)
            matrices = self._tensor_actions[n]
            stacked = vstack(
                [m.restrict(range(m.rows), indices) for m in matrices],
                cols=len(indices),
            )
            local = kernel_basis(stacked)
            self._tensor_invariants[(n, key)] = Subspace(
                self.leibniz.dim(n),
                [{indices[j]: v for j, v in vector.items()} for vector in local.basis],
                independent=True,
            )
        return self._tensor_invariants[(n, key)]

    def _solver(self, n: int, key: Key) -> Subspace:
        """
        Return the sum of the invariants and the boundaries of `T^n(h)` with
        grading key `key`, the invariant basis coming first.
        """
        if (n, key) not in self._tensor_solvers:
            d = self.leibniz.boundary(n + 1)
            columns = self.leibniz.blocks(n + 1).get(key, [])
            boundaries = column_space(d.restrict(range(d.rows), columns))
            invariant = self._invariant_space(n, key)
            self._tensor_solvers[(n, key)] = Subspace(
                self.leibniz.dim(n), invariant.basis + boundaries.basis
            )
        return self._tensor_solvers[(n, key)]

    def invariant_representative(self, n: int, cycle: Vector) -> Optional[Vector]:
        """
        Return an h-invariant cycle of `T^n(h)` homologous to `cycle`, or
        `None` if there is none.
        """
        result: Vector = {}
        for key, part in self.leibniz.split(n, cycle).items():
            invariant = self._invariant_space(n, key)
            coords = self._solver(n, key).coordinates(part)
            if coords is None:
                return None
            for value, vector in zip(coords[: invariant.dim], invariant.basis):
                if value:
                    add_scaled(result, vector, value)
        return result

    def in_ideal_block(self, n: int, vector: Vector) -> bool:
        # module letters of I follow those of g
        indexer = self.coefficients.indexer(n)
        return all(indexer.word(i)[0] >= self.ext.g.dim for i in vector)

    def hypothesis_a(self, n: int) -> HypothesisAReport:
        report = HypothesisAReport(degree=n)
        k = self.k(n)
        if not k.dim:
            return report
        eps = epsilon(self.ext, n)
        for index, rep in enumerate(k.representatives):
            found = self.invariant_representative(n + 1, eps.apply(rep))
            report.classes.append(
                HypothesisAClass(
                    index=index,
                    found=found is not None,
                    in_ideal_block=self.in_ideal_block(n, rep),
                    representative=found,
                )
            )
        if not report.ok:
            logger.warning(
                "K_%d(%s) has classes without an h-invariant representative",
                n,
                self.ext.name,
            )
        return report


def compute_K(
    ext: AbelianExtension,
    n: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> KDegree:
    return ExtensionComputation(ext, n, configuration=configuration, trace=trace).k(n)


def hypothesis_a_check(
    ext: AbelianExtension,
    n: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> HypothesisAReport:
    """
    Search, for every class of `K_n` pushed into `HL_(n+1)(h)` by `epsilon`,
    for an h-invariant representative.
    """
    return ExtensionComputation(
        ext, n, configuration=configuration, trace=trace
    ).hypothesis_a(n)


def balanced_tensor_parts(
    ext: AbelianExtension, alpha: SparseMatrix
) -> tuple[Vector, Vector]:
    """
    Return the two sums `sum_i B^-1(b_i*) (x) alpha(b_i)` and
    `sum_i alpha(B^-1(b_i*)) (x) b_i` in `T^2(h)`.

    `alpha` is a `dim I` x `dim g` matrix of a g-module map `g -> I`, and `B`
    the Killing form of `g`.
    """
    g = ext.g
    if alpha.shape != (ext.ideal_dim, g.dim):
        raise DimensionMismatch(
            "Map must be %dx%d, got %dx%d" % ((ext.ideal_dim, g.dim) + alpha.shape)
        )
    if not is_equivariant(alpha, adjoint_rep(g), ext.rep):
        raise NotEquivariant("Map is not a g-module map from %s to I" % g.name)
    form = killing_form(g)
    if rank(form) < g.dim:
        raise SingularKillingForm("Killing form of %s is singular" % g.name)
    dual = inverse(form)

    indexer = BasisIndexer(BasisKind.TENSOR, ext.h.dim, 2)
    first: Vector = {}
    second: Vector = {}
    for i in range(g.dim):
        image = {ext.embed_ideal(a): v for a, v in alpha.column(i).items()}
        for j, u in dual.column(i).items():
            # B^-1(b_i*) = sum_j dual[j, i] b_j
            for a, v in image.items():
                add_scaled(first, {indexer.index((j, a)): v}, u)
            for a, v in alpha.column(j).items():
                add_scaled(second, {indexer.index((ext.embed_ideal(a), i)): v}, u)
    return first, second


def balanced_tensor(ext: AbelianExtension, alpha: SparseMatrix) -> Vector:
    """
    Return the h-invariant element of `T^2(h)` built from the dual bases of
    the Killing form and a g-module map `alpha: g -> I`.

    :raises NotEquivariant: if `alpha` does not commute with the action.
    :raises SingularKillingForm: if the Killing form of `g` is degenerate.
    """
    first, second = balanced_tensor_parts(ext, alpha)
    add_scaled(first, second, Fraction(1))
    return first


def structure_series(
    ext: AbelianExtension,
    N: int,
    *,
    computation: Optional[ExtensionComputation] = None,
    configuration: Optional[HomologyConfiguration] = None,
) -> PoincareSeries:
    """
    Return the series of `[Lambda*(I)]^g (x) T(K)` through degree `N`.
    """
    if computation is None:
        computation = ExtensionComputation(
            ext, max(N - 1, 0), configuration=configuration
        )
    invariants = wedge_invariant_dims(ext, configuration=computation.configuration)
    k_dims = [computation.k(n).dim for n in range(N)]
    return predicted_series(invariants, k_dims, N)


def verify_structure_theorem(
    ext: AbelianExtension,
    N: int,
    *,
    check_hypothesis: bool = True,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> StructureReport:
    """
    Compare `HL_n(h)` computed directly with the structure series for
    `n = 0 .. N`, checking hypothesis A in every degree where `K` is not zero.
    """
    computation = ExtensionComputation(
        ext, max(N - 1, 0), configuration=configuration, trace=trace
    )
    predicted = structure_series(ext, N, computation=computation)
    invariants = wedge_invariant_dims(ext, configuration=computation.configuration)
    k_dims = tuple(computation.k(n).dim for n in range(N))
    direct = leibniz_homology(
        ext.h, N, configuration=computation.configuration, trace=trace
    ).betti

    reports = []
    if check_hypothesis:
        reports = [computation.hypothesis_a(n) for n in range(N) if k_dims[n]]
    report = StructureReport(
        name=ext.name,
        invariant_dims=invariants,
        k_dims=k_dims,
        predicted=predicted,
        direct=direct,
        hypothesis_a=reports,
    )
    if not report.ok:
        logger.warning("Structure theorem check failed for %s", ext.name)
    return report


def verify_hr_formula(
    ext: AbelianExtension,
    n: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> HRReport:
    """
    Compare `dim HR_n(h)` with
    `dim H_(n+3)(g) + sum_(i=0)^(n+1) dim K_(n+1-i) dim H_i(g)`.
    """
    computation = ExtensionComputation(
        ext, n + 1, configuration=configuration, trace=trace
    )
    direct = hr_homology(
        ext.h, n, configuration=computation.configuration, trace=trace
    )[n].dim
    lie_g = lie_homology(ext.g, n + 3, configuration=computation.configuration).betti
    summands = [(i, computation.k(n + 1 - i).dim, lie_g[i]) for i in range(n + 2)]
    return HRReport(
        name=ext.name,
        degree=n,
        direct=direct,
        delta_term=lie_g[n + 3],
        summands=summands,
    )


def splitting_check(
    ext: AbelianExtension,
    n: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> SplittingReport:
    """
    Check that `H_n(I; h)^g` is `[Lambda^(n+1)(I)]^g + K_n` and that `zeta`
    is injective on the first summand.
    """
    computation = ExtensionComputation(
        ext, n, configuration=configuration, trace=trace
    )
    source = computation.invariant_homology(n)
    k = computation.k(n)
    wedge = wedge_invariant_complex(
        ext, n + 1, configuration=computation.configuration
    ).basis(n + 1)

    matrix = zeta(ext, n)
    columns = []
    for vector in wedge:
        coords = computation.invariants.coordinates(n, matrix.apply(vector))
        if coords is None:
            raise ChainMapError("zeta does not map invariants to invariant chains")
        values = source.coordinates(coords)
        columns.append({i: v for i, v in enumerate(values) if v})
    zeta_rank = rank(SparseMatrix.from_columns(source.dim, columns))

    return SplittingReport(
        name=ext.name,
        degree=n,
        homology_dim=source.dim,
        wedge_invariant_dim=len(wedge),
        k_dim=k.dim,
        zeta_rank=zeta_rank,
    )


def symmetric_dim(d: int, k: int) -> int:
    "`dim S^k(V)` for `dim V = d`."
    return comb(d + k - 1, k)


def degree_two_identity(d: int) -> bool:
    return comb(d, 2) + symmetric_dim(d, 2) == d * d
