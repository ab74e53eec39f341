import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, TypeVar

from ..configuration import HomologyConfiguration
from ..exactla import (
    Quotient,
    SparseMatrix,
    Subspace,
    Vector,
    add_scaled,
    column_space,
    kernel_basis,
    rank,
    vector_to_json,
    vstack,
)
from ..exceptions import ChainMapError, DegreeOutOfRange, NotACycle
from ..lie.algebra import AbelianExtension, LieAlgebra
from ..logger import ComputationTrace
from .complexes import (
    ChainComplex,
    ChainMap,
    SubComplex,
    adjoint_complex,
    cr_complex,
    ideal_invariant_complex,
    invariant_subcomplex,
    ker_subcomplex,
    leibniz_complex,
    lie_complex,
    rel_complex,
    wedge_invariant_complex,
    wedge_to_coeff,
    wedge_to_tensor,
    word_map,
)
from .reports import InvariantActionReport, LemmaReport, compare

logger = logging.getLogger("leibhom.homology")

Key = tuple[int, ...]
T = TypeVar("T")
R = TypeVar("R")


@dataclass
class HomologyBlock:
    key: Key
    indices: frozenset[int]
    cycles: Subspace
    boundaries: Subspace
    quotient: Quotient


@dataclass
class HomologyDegree:
    """
    The homology of a complex in one degree.

    When representatives are computed, they are cycles in the coordinates of
    the complex whose classes form a basis of the homology, ordered by
    grading key.
    """

    degree: int
    dim: int
    cycle_dim: int
    boundary_dim: int
    blocks: Optional[list[HomologyBlock]] = None

    @property
    def representatives(self) -> list[Vector]:
        if self.blocks is None:
            raise ValueError("Representatives were not computed")
        result = []
        for block in self.blocks:
            result.extend(block.quotient.complement)
        return result

    def coordinates(self, vector: Vector) -> list[Fraction]:
        """
        Return the coordinates of the class of a cycle.
        """
        if self.blocks is None:
            raise ValueError("Representatives were not computed")
        parts: dict[Key, Vector] = {}
        for index, value in vector.items():
            for block in self.blocks:
                if index in block.indices:
                    parts.setdefault(block.key, {})[index] = value
                    break
            else:
                raise NotACycle(self.degree)
        result: list[Fraction] = []
        for block in self.blocks:
            part = parts.get(block.key, {})
            try:
                result.extend(block.quotient.coordinates(part))
            except NotACycle:
                raise NotACycle(self.degree)
        return result

    def is_boundary(self, vector: Vector) -> bool:
        return not any(self.coordinates(vector))

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"degree": self.degree, "dim": self.dim}
        if self.blocks is not None:
            data["representatives"] = [vector_to_json(v) for v in self.representatives]
        return data


@dataclass
class GradedHomology:
    """
    The homology of a complex in a range of degrees.
    """

    name: str
    degrees: dict[int, HomologyDegree] = field(default_factory=dict)

    def __getitem__(self, n: int) -> HomologyDegree:
        try:
            return self.degrees[n]
        except KeyError:
            raise DegreeOutOfRange("Homology of %s not computed in degree %d" % (self.name, n))

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(self.degrees[n].dim for n in sorted(self.degrees))

    def to_json(self) -> dict[str, Any]:
        return {
            "betti": list(self.betti),
            "degrees": [self.degrees[n].to_json() for n in sorted(self.degrees)],
            "name": self.name,
        }

    def render_text(self) -> str:
        return "%s: %s" % (self.name, ", ".join(str(b) for b in self.betti))


# block computations, run in worker processes when jobs > 1


def _block_betti(args: tuple[int, SparseMatrix, SparseMatrix]) -> tuple[int, int, int]:
    size, d_n, d_up = args
    kernel_dim = size - rank(d_n)
    image_dim = rank(d_up)
    return kernel_dim - image_dim, kernel_dim, image_dim


def _block_homology(
    args: tuple[int, Sequence[int], SparseMatrix, SparseMatrix],
) -> tuple[Subspace, Subspace]:
    ambient, indices, d_n, d_up = args
    local = kernel_basis(d_n)
    cycles = Subspace(
        ambient,
        [{indices[j]: v for j, v in vector.items()} for vector in local.basis],
        independent=True,
    )
    boundaries = column_space(d_up)
    return cycles, boundaries


def _map_blocks(fn: Callable[[T], R], items: list[T], jobs: int) -> list[R]:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(fn, items))
    return [fn(item) for item in items]


def homology(
    C: ChainComplex,
    n: int,
    *,
    representatives: bool = True,
    trace: Optional[ComputationTrace] = None,
) -> HomologyDegree:
    """
    Return the homology of `C` in reported degree `n`.

    With `representatives` unset only ranks are computed.
    """
    internal = C.internal_degree(n)
    if internal < 0:
        raise DegreeOutOfRange("Degree %d is below the range of %s" % (n, C.name))
    C.check_degree(internal + 1)
    d_n = C.boundary(internal)
    d_up = C.boundary(internal + 1)
    blocks = C.blocks(internal)
    up_blocks = C.blocks(internal + 1)
    jobs = C.configuration.jobs

    keys = list(blocks)
    if not representatives:
        results = _map_blocks(
            _block_betti,
            [
                (
                    len(blocks[k]),
                    d_n.restrict(range(d_n.rows), blocks[k]),
                    d_up.restrict(range(d_up.rows), up_blocks.get(k, [])),
                )
                for k in keys
            ],
            jobs,
        )
        degree = HomologyDegree(
            degree=n,
            dim=sum(r[0] for r in results),
            cycle_dim=sum(r[1] for r in results),
            boundary_dim=sum(r[2] for r in results),
        )
    else:
        results_h = _map_blocks(
            _block_homology,
            [
                (
                    C.dim(internal),
                    blocks[k],
                    d_n.restrict(range(d_n.rows), blocks[k]),
                    d_up.restrict(range(d_up.rows), up_blocks.get(k, [])),
                )
                for k in keys
            ],
            jobs,
        )
        homology_blocks = [
            HomologyBlock(
                key=k,
                indices=frozenset(blocks[k]),
                cycles=cycles,
                boundaries=boundaries,
                quotient=Quotient(cycles, boundaries),
            )
            for k, (cycles, boundaries) in zip(keys, results_h)
        ]
        degree = HomologyDegree(
            degree=n,
            dim=sum(b.quotient.dim for b in homology_blocks),
            cycle_dim=sum(b.cycles.dim for b in homology_blocks),
            boundary_dim=sum(b.boundaries.dim for b in homology_blocks),
            blocks=homology_blocks,
        )

    logger.debug(
        "H_%d(%s) has dimension %d (%d blocks)", n, C.name, degree.dim, len(keys)
    )
    trace = trace if trace is not None else C.trace
    if trace is not None:
        trace.log_event(
            category="homology",
            event="degree_computed",
            data={
                "blocks": len(keys),
                "complex": C.name,
                "degree": n,
                "dim": degree.dim,
            },
        )
    return degree


def graded_homology(
    C: ChainComplex,
    degrees: Sequence[int],
    *,
    representatives: bool = False,
    name: Optional[str] = None,
) -> GradedHomology:
    result = GradedHomology(name=name or C.name)
    for n in degrees:
        result.degrees[n] = homology(C, n, representatives=representatives)
    return result


def lie_homology(
    g: LieAlgebra,
    N: int,
    *,
    representatives: bool = False,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> GradedHomology:
    C = lie_complex(g, N + 1, configuration=configuration, trace=trace)
    return graded_homology(C, range(N + 1), representatives=representatives)


def adjoint_homology(
    g: LieAlgebra,
    N: int,
    *,
    representatives: bool = False,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> GradedHomology:
    C = adjoint_complex(g, N + 1, configuration=configuration, trace=trace)
    return graded_homology(C, range(N + 1), representatives=representatives)


def leibniz_homology(
    g: LieAlgebra,
    N: int,
    *,
    representatives: bool = False,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> GradedHomology:
    C = leibniz_complex(g, N + 1, configuration=configuration, trace=trace)
    return graded_homology(C, range(N + 1), representatives=representatives)


def hr_homology(
    g: LieAlgebra,
    N: int,
    *,
    representatives: bool = False,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> GradedHomology:
    """
    Return `HR_n(g)`, the homology of `Ker(pi)`, for `n = 0 .. N`.
    """
    C = cr_complex(g, N + 1, configuration=configuration, trace=trace)
    return graded_homology(C, range(N + 1), representatives=representatives)


def rel_homology(
    g: LieAlgebra,
    N: int,
    *,
    representatives: bool = False,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> GradedHomology:
    """
    Return `H^rel_n(g)`, the homology of `Ker(pi')`, for `n = 0 .. N`.
    """
    C = rel_complex(g, N + 1, configuration=configuration, trace=trace)
    return graded_homology(C, range(N + 1), representatives=representatives)


def coefficient_invariant_homology(
    ext: AbelianExtension,
    N: int,
    *,
    representatives: bool = False,
    configuration: Optional[HomologyConfiguration] = None,
    trace: Optional[ComputationTrace] = None,
) -> GradedHomology:
    """
    Return `H_n(I; h)^g` for `n = 0 .. N`.
    """
    C = ideal_invariant_complex(ext, N + 1, configuration=configuration, trace=trace)
    return graded_homology(C, range(N + 1), representatives=representatives)


def wedge_invariant_dims(
    ext: AbelianExtension,
    N: Optional[int] = None,
    *,
    configuration: Optional[HomologyConfiguration] = None,
) -> tuple[int, ...]:
    """
    Return `dim [Lambda^k(I)]^g` for `k = 0 .. N`, by default up to `dim I`.
    """
    top = ext.ideal_dim if N is None else N
    C = wedge_invariant_complex(ext, max(top, 0), configuration=configuration)
    return tuple(C.dim(k) for k in range(top + 1))


def invariant_homology(
    C: ChainComplex,
    action: Callable[[int], Sequence[SparseMatrix]],
    n: int,
    *,
    representatives: bool = True,
) -> HomologyDegree:
    return homology(invariant_subcomplex(C, action), n, representatives=representatives)


def induced_on_homology(
    f: ChainMap,
    n: int,
    source: Optional[HomologyDegree] = None,
    target: Optional[HomologyDegree] = None,
) -> SparseMatrix:
    """
    Return the matrix of the map induced by `f` from reported degree `n` of
    its source, in the bases of representatives.
    """
    internal = f.source.internal_degree(n)
    target_degree = f.target.reported_degree(internal + f.shift)
    if source is None:
        source = homology(f.source, n)
    if target is None:
        target = homology(f.target, target_degree)
    columns = []
    for rep in source.representatives:
        image = f.apply(internal, rep)
        coords = target.coordinates(image)
        columns.append({i: v for i, v in enumerate(coords) if v})
    return SparseMatrix.from_columns(target.dim, columns)


def connecting_delta(
    g: LieAlgebra,
    n: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
) -> SparseMatrix:
    """
    Return the matrix of `delta: H_n(g) -> H^rel_(n-3)(g)`.

    A cycle is lifted to the tensor word with the same letters, and its
    Leibniz boundary lies in `Ker(pi')`.
    """
    if n < 3:
        raise DegreeOutOfRange("connecting_delta requires n >= 3")
    lie = lie_complex(g, n + 1, configuration=configuration)
    leib = leibniz_complex(g, n, configuration=configuration)
    pi = word_map(leib, lie, name="pi'")
    rel = ker_subcomplex(pi, shift=2, name="Crel(%s)" % g.name)
    source = homology(lie, n)
    target = homology(rel, n - 3)
    lift = wedge_to_tensor(lie, leib)
    return _connecting(source, target, rel, pi, leib.boundary(n), lambda v: lift(n, v), n - 1)


def connecting_delta_lie(
    g: LieAlgebra,
    n: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
) -> SparseMatrix:
    """
    Return the matrix of `delta^Lie: H_(n+1)(g) -> HR_(n-2)(g)`.

    A cycle `a_0 ^ ... ^ a_n` is lifted to `a_0 (x) a_1 ^ ... ^ a_n`, and its
    boundary in the adjoint complex lies in `Ker(pi)`.
    """
    if n < 2:
        raise DegreeOutOfRange("connecting_delta_lie requires n >= 2")
    lie = lie_complex(g, n + 2, configuration=configuration)
    adj = adjoint_complex(g, n, configuration=configuration)
    pi = word_map(adj, lie, name="pi")
    cr = ker_subcomplex(pi, shift=1, name="CR(%s)" % g.name)
    source = homology(lie, n + 1)
    target = homology(cr, n - 2)
    lift = wedge_to_coeff(lie, adj)
    return _connecting(
        source, target, cr, pi, adj.boundary(n), lambda v: lift(n + 1, v), n - 1
    )


def _connecting(
    source: HomologyDegree,
    target: HomologyDegree,
    kernel: SubComplex,
    projection: ChainMap,
    boundary: SparseMatrix,
    lift: Callable[[Vector], Vector],
    landing: int,
) -> SparseMatrix:
    columns = []
    for rep in source.representatives:
        image = boundary.apply(lift(rep))
        if projection.apply(landing, image):
            raise ChainMapError("Boundary of a lift does not lie in the kernel")
        coords = kernel.coordinates(landing, image)
        if coords is None:
            raise ChainMapError("Boundary of a lift does not lie in the kernel")
        values = target.coordinates(coords)
        columns.append({i: v for i, v in enumerate(values) if v})
    return SparseMatrix.from_columns(target.dim, columns)


def homology_of_invariant_action_check(
    C: ChainComplex,
    action: Callable[[int], Sequence[SparseMatrix]],
    n: int,
) -> InvariantActionReport:
    """
    Compare `dim H_n(C^g)` with the dimension of the invariants of the action
    induced on `H_n(C)`.
    """
    full = homology(C, n)
    internal = C.internal_degree(n)
    induced = []
    for matrix in action(internal):
        columns = []
        for rep in full.representatives:
            coords = full.coordinates(matrix.apply(rep))
            columns.append({i: v for i, v in enumerate(coords) if v})
        induced.append(SparseMatrix.from_columns(full.dim, columns))
    if induced:
        invariant_dim = kernel_basis(vstack(induced, cols=full.dim)).dim
    else:
        invariant_dim = full.dim
    sub = homology(invariant_subcomplex(C, action), n, representatives=False)
    return InvariantActionReport(
        name=C.name,
        degree=n,
        subcomplex_dim=sub.dim,
        induced_invariant_dim=invariant_dim,
    )


def _convolve(a: Sequence[int], b: Sequence[int], n: int) -> int:
    return sum(
        a[p] * b[n - p] for p in range(n + 1) if p < len(a) and n - p < len(b)
    )


def lemma_cross_check(
    ext: AbelianExtension,
    N: int,
    *,
    configuration: Optional[HomologyConfiguration] = None,
) -> LemmaReport:
    """
    Check `H_n(h) = sum_(p+q=n) [Lambda^p(I)]^g (x) H_q(g)` and
    `H_n(h; h) = sum_(p+q=n) H_p(I; h)^g (x) H_q(g)` dimension-wise for
    `n = 0 .. N`.
    """
    lie_h = lie_homology(ext.h, N, configuration=configuration).betti
    lie_g = lie_homology(ext.g, N, configuration=configuration).betti
    adjoint_h = adjoint_homology(ext.h, N, configuration=configuration).betti
    wedge = wedge_invariant_dims(ext, N, configuration=configuration)
    coeff = coefficient_invariant_homology(ext, N, configuration=configuration).betti
    return LemmaReport(
        name=ext.name,
        lie_rows=compare(lie_h, [_convolve(wedge, lie_g, n) for n in range(N + 1)]),
        adjoint_rows=compare(
            adjoint_h, [_convolve(coeff, lie_g, n) for n in range(N + 1)]
        ),
    )


def add_boundary(
    C: ChainComplex, n: int, vector: Vector, chain: Vector
) -> Vector:
    """
    Return `vector + d(chain)`, with `chain` of internal degree `n + 1`.
    """
    result = dict(vector)
    add_scaled(result, C.boundary(n + 1).apply(chain), Fraction(1))
    return result

