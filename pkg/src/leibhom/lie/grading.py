"""
Additive gradings of Lie algebras and modules.

A grading assigns a weight to every basis letter such that every non-zero
structure constant `c(i, j, k)` satisfies `w(k) = w(i) + w(j)`, and likewise
for module actions. Differentials of all the complexes built from such
letters preserve the total weight of a word, so boundary matrices split into
independent blocks, one per weight.

Rational weights are found as a nullspace over ``QQ``; weights modulo 2 as a
nullspace over ``GF(2)``, which catches sign automorphisms such as those of
compact algebras which have no rational torus.
"""

import logging
from math import lcm
from typing import Iterable, Optional, Sequence

from sympy import GF
from sympy.polys.matrices import DomainMatrix

from ..exactla import SparseMatrix, kernel_basis
from .algebra import LieAlgebra, Representation

logger = logging.getLogger("leibhom.grading")

Key = tuple[int, ...]


def _constraint_rows(
    algebra: LieAlgebra, rep: Optional[Representation]
) -> list[dict[int, int]]:
    n = algebra.dim
    rows = []
    for i, j, k, _ in algebra.structure_constants():
        if i < j:
            row: dict[int, int] = {}
            for index, value in ((k, 1), (i, -1), (j, -1)):
                row[index] = row.get(index, 0) + value
            rows.append({index: v for index, v in row.items() if v})
    if rep is not None:
        for i, matrix in enumerate(rep.matrices):
            for target, source, _ in matrix.entries():
                row = {}
                for index, value in ((n + target, 1), (i, -1), (n + source, -1)):
                    row[index] = row.get(index, 0) + value
                rows.append({index: v for index, v in row.items() if v})
    return [row for row in rows if row]


def rational_gradings(
    algebra: LieAlgebra, rep: Optional[Representation] = None
) -> list[tuple[int, ...]]:
    """
    Return a basis of the rational gradings, scaled to integer weights.

    Weights are listed for the algebra letters, followed by the module letters
    when `rep` is given.
    """
    width = algebra.dim + (rep.dim if rep is not None else 0)
    rows = [{k: v for k, v in row.items()} for row in _constraint_rows(algebra, rep)]
    space = kernel_basis(SparseMatrix.from_rows(width, rows))
    gradings = []
    for vector in space.basis:
        scale = lcm(*(v.denominator for v in vector.values()))
        gradings.append(
            tuple(int(vector.get(i, 0) * scale) for i in range(width))
        )
    return gradings


def binary_gradings(
    algebra: LieAlgebra, rep: Optional[Representation] = None
) -> list[tuple[int, ...]]:
    """
    Return a basis of the gradings with values in Z/2.
    """
    width = algebra.dim + (rep.dim if rep is not None else 0)
    rows = _constraint_rows(algebra, rep)
    field = GF(2)
    rep_rows = {}
    for r, row in enumerate(rows):
        entries = {k: field(v % 2) for k, v in row.items() if v % 2}
        if entries:
            rep_rows[r] = entries
    if not rep_rows:
        return [tuple(int(i == j) for i in range(width)) for j in range(width)]

    reduced, pivots = DomainMatrix(rep_rows, (len(rows), width), field).rref()
    pivot_set = set(pivots)
    free = [j for j in range(width) if j not in pivot_set]
    vectors = {j: [0] * width for j in free}
    for j in free:
        vectors[j][j] = 1
    for i, row in reduced.to_sparse().rep.items():
        for j, value in row.items():
            if j != pivots[i] and int(value) % 2:
                vectors[j][pivots[i]] = 1
    return [tuple(vectors[j]) for j in free]


class WordGrading:
    """
    Total weights of words built from module letters and space letters.

    The first `rational_width` key components are integers, the remaining
    ones are reduced modulo 2.
    """

    def __init__(
        self,
        letter_weights: Sequence[Key],
        module_weights: Optional[Sequence[Key]] = None,
        *,
        rational_width: int = 0,
    ) -> None:
        self.letter_weights = [tuple(w) for w in letter_weights]
        self.module_weights = (
            [tuple(w) for w in module_weights] if module_weights is not None else None
        )
        self.rational_width = rational_width
        self.width = len(self.letter_weights[0]) if self.letter_weights else 0

    def __repr__(self) -> str:
        return "<WordGrading rational=%d binary=%d>" % (
            self.rational_width,
            self.width - self.rational_width,
        )

    @property
    def trivial(self) -> bool:
        return self.width == 0

    def key(self, word: Sequence[int], *, with_module: bool = False) -> Key:
        total = [0] * self.width
        letters: Iterable[int] = word
        if with_module:
            for t, w in enumerate(self.module_weights[word[0]]):
                total[t] += w
            letters = word[1:]
        for letter in letters:
            for t, w in enumerate(self.letter_weights[letter]):
                total[t] += w
        for t in range(self.rational_width, self.width):
            total[t] %= 2
        return tuple(total)


def _transpose(gradings: Sequence[tuple[int, ...]], count: int) -> list[Key]:
    return [tuple(g[i] for g in gradings) for i in range(count)]


def algebra_grading(algebra: LieAlgebra) -> WordGrading:
    """
    Return the gradings of words in the letters of `algebra`.
    """
    rational = rational_gradings(algebra)
    binary = binary_gradings(algebra)
    weights = _transpose(rational + binary, algebra.dim)
    logger.debug(
        "Algebra %s has %d rational and %d binary gradings",
        algebra.name,
        len(rational),
        len(binary),
    )
    return WordGrading(weights, weights, rational_width=len(rational))


def module_grading(algebra: LieAlgebra, rep: Representation) -> WordGrading:
    """
    Return the gradings of words made of one letter of `rep` followed by
    letters of `algebra`.
    """
    rational = rational_gradings(algebra, rep)
    binary = binary_gradings(algebra, rep)
    weights = _transpose(rational + binary, algebra.dim + rep.dim)
    logger.debug(
        "Module %s has %d rational and %d binary gradings",
        rep.name,
        len(rational),
        len(binary),
    )
    return WordGrading(
        weights[: algebra.dim],
        weights[algebra.dim :],
        rational_width=len(rational),
    )
