from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class PoincareSeries:
    """
    A generating function of graded dimensions, truncated at `max_degree`.
    """

    coefficients: tuple[int, ...]

    @classmethod
    def from_dims(cls, dims: Iterable[int], max_degree: int) -> "PoincareSeries":
        values = list(dims)[: max_degree + 1]
        values.extend([0] * (max_degree + 1 - len(values)))
        return cls(tuple(values))

    @property
    def max_degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, degree: int) -> int:
        if 0 <= degree < len(self.coefficients):
            return self.coefficients[degree]
        return 0

    def truncate(self, max_degree: int) -> "PoincareSeries":
        return PoincareSeries.from_dims(self.coefficients, max_degree)

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        n = min(self.max_degree, other.max_degree)
        return PoincareSeries(tuple(self[i] + other[i] for i in range(n + 1)))

    def __mul__(self, other: "PoincareSeries") -> "PoincareSeries":
        n = min(self.max_degree, other.max_degree)
        return PoincareSeries(
            tuple(
                sum(self[i] * other[k - i] for i in range(k + 1)) for k in range(n + 1)
            )
        )

    def tensor_algebra(self) -> "PoincareSeries":
        """
        Return `1 / (1 - P(t))`, the series of the tensor algebra on a graded
        space with series `P(t)`. The constant term must vanish.
        """
        if self[0]:
            raise ValueError("Generators of a tensor algebra must have positive degree")
        result = [1]
        for k in range(1, self.max_degree + 1):
            result.append(sum(self[i] * result[k - i] for i in range(1, k + 1)))
        return PoincareSeries(tuple(result))

    def dominates(self, other: "PoincareSeries") -> bool:
        n = min(self.max_degree, other.max_degree)
        return all(self[i] >= other[i] for i in range(n + 1))

    def to_json(self) -> list[int]:
        return list(self.coefficients)

    def render_text(self) -> str:
        terms = []
        for degree, value in enumerate(self.coefficients):
            if not value:
                continue
            if degree == 0:
                terms.append(str(value))
            else:
                power = "t" if degree == 1 else "t^%d" % degree
                terms.append(power if value == 1 else "%d%s" % (value, power))
        return (" + ".join(terms) or "0") + " + O(t^%d)" % (self.max_degree + 1)


def shifted(dims: Sequence[int], shift: int, max_degree: int) -> PoincareSeries:
    """
    Return the series placing `dims[n]` in degree `n + shift`.
    """
    values = [0] * (max_degree + 1)
    for n, value in enumerate(dims):
        if 0 <= n + shift <= max_degree:
            values[n + shift] = value
    return PoincareSeries(tuple(values))


def predicted_series(
    invariant_dims: Sequence[int], k_dims: Sequence[int], max_degree: int
) -> PoincareSeries:
    """
    Return the series of `Lambda*(I)^g (x) T(K)`, where `K_n` sits in degree
    `n + 1`.
    """
    lam = PoincareSeries.from_dims(invariant_dims, max_degree)
    generators = shifted(k_dims, 1, max_degree)
    return lam * generators.tensor_algebra()
