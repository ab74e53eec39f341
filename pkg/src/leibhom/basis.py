from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterator, Optional, Sequence

from .exactla import ONE, SparseMatrix, Vector, add_scaled

Word = tuple[int, ...]


class BasisKind(Enum):
    WEDGE = "wedge"
    TENSOR = "tensor"
    COEFF = "coeff"


def permutation_sign(sequence: Sequence[int]) -> int:
    """
    Return the sign of the permutation sorting `sequence`, or 0 if it has a
    repeated entry.
    """
    items = list(sequence)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] >= items[j]:
            if items[j - 1] == items[j]:
                return 0
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign


def wedge_normalize(letters: Sequence[int]) -> tuple[int, Word]:
    """
    Return `(sign, word)` with `word` strictly increasing and
    `letters[0] ^ ... ^ letters[k-1] = sign * word`.
    """
    sign = permutation_sign(letters)
    if not sign:
        return 0, ()
    return sign, tuple(sorted(letters))


class BasisIndexer:
    """
    Enumeration of the basis words spanning one degree of a complex.

    - `WEDGE`: strictly increasing words of length `degree` over `space_dim`
      letters, in lexicographic order.
    - `TENSOR`: all words of length `degree`, in base `space_dim` numeric order.
    - `COEFF`: a module letter followed by a wedge word, module-major.
    """

    def __init__(
        self,
        kind: BasisKind,
        space_dim: int,
        degree: int,
        module_dim: Optional[int] = None,
    ) -> None:
        if degree < 0:
            raise ValueError("Degree must be non-negative")
        if (kind == BasisKind.COEFF) != (module_dim is not None):
            raise ValueError("A module dimension is required for coefficient words")
        self.kind = kind
        self.space_dim = space_dim
        self.degree = degree
        self.module_dim = module_dim

        self._index: Optional[dict[Word, int]] = None
        if kind == BasisKind.TENSOR:
            self._size = space_dim**degree
            self._words: Optional[list[Word]] = None
        else:
            wedges = list(combinations(range(space_dim), degree))
            if kind == BasisKind.WEDGE:
                self._words = wedges
            else:
                self._words = [(m,) + w for m in range(module_dim) for w in wedges]
            self._size = len(self._words)

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterator[Word]:
        if self._words is not None:
            return iter(self._words)
        return iter(product(range(self.space_dim), repeat=self.degree))

    def __repr__(self) -> str:
        return "<BasisIndexer %s degree=%d size=%d>" % (
            self.kind.value,
            self.degree,
            self._size,
        )

    def expected_size(self) -> int:
        if self.kind == BasisKind.TENSOR:
            return self.space_dim**self.degree
        size = comb(self.space_dim, self.degree)
        if self.kind == BasisKind.COEFF:
            size *= self.module_dim
        return size

    def word(self, index: int) -> Word:
        if not 0 <= index < self._size:
            raise IndexError("Basis index %d out of range" % index)
        if self._words is not None:
            return self._words[index]
        letters = []
        for _ in range(self.degree):
            index, letter = divmod(index, self.space_dim)
            letters.append(letter)
        return tuple(reversed(letters))

    def index(self, word: Word) -> int:
        if self.kind == BasisKind.TENSOR:
            if len(word) != self.degree:
                raise KeyError(word)
            value = 0
            for letter in word:
                if not 0 <= letter < self.space_dim:
                    raise KeyError(word)
                value = value * self.space_dim + letter
            return value
        if self._index is None:
            self._index = {w: i for i, w in enumerate(self._words)}
        return self._index[word]

    def labels(
        self, space_labels: Sequence[str], module_labels: Optional[Sequence[str]] = None
    ) -> list[str]:
        result = []
        for word in self:
            if self.kind == BasisKind.COEFF:
                head = module_labels[word[0]]
                tail = "^".join(space_labels[a] for a in word[1:]) or "1"
                result.append("%s|%s" % (head, tail))
            elif self.kind == BasisKind.WEDGE:
                result.append("^".join(space_labels[a] for a in word) or "1")
            else:
                result.append("*".join(space_labels[a] for a in word) or "1")
        return result

    def action_matrix(
        self,
        letter_matrix: SparseMatrix,
        module_matrix: Optional[SparseMatrix] = None,
    ) -> SparseMatrix:
        """
        Return the matrix of the derivation action induced by a linear map on
        letters (and on the module letter for coefficient words).
        """
        letter_columns = letter_matrix.columns()
        module_columns = module_matrix.columns() if module_matrix is not None else None
        wedge_tail = self.kind != BasisKind.TENSOR

        columns: list[Vector] = []
        for word in self:
            column: Vector = {}
            start = 0
            if self.kind == BasisKind.COEFF:
                start = 1
                for target, value in module_columns[word[0]].items():
                    index = self.index((target,) + word[1:])
                    add_scaled(column, {index: value}, ONE)
            for position in range(start, len(word)):
                for target, value in letter_columns[word[position]].items():
                    letters = word[:position] + (target,) + word[position + 1 :]
                    sign = 1
                    if wedge_tail:
                        sign, tail = wedge_normalize(letters[start:])
                        if not sign:
                            continue
                        letters = letters[:start] + tail
                    add_scaled(column, {self.index(letters): value}, Fraction(sign))
            columns.append(column)
        return SparseMatrix.from_columns(self._size, columns)
