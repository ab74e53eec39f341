"""
Reports comparing directly computed dimensions with predicted ones.

Every report serializes to JSON with :meth:`to_json` and renders as a plain
text table with :meth:`render_text`.
"""

from dataclasses import dataclass, field
from itertools import zip_longest
from typing import Any, Mapping, Optional, Sequence

from ..exactla import Vector, vector_from_json, vector_to_json
from ..series import PoincareSeries


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> list[str]:
    cells = [[str(c) for c in header]] + [[_cell(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    return [
        "  ".join(value.ljust(width) for value, width in zip(row, widths)).rstrip()
        for row in cells
    ]


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "NO"
    return str(value)


@dataclass
class DegreeComparison:
    degree: int
    direct: Optional[int]
    predicted: Optional[int]
    "`None` where one side was not computed in this degree."

    @property
    def match(self) -> bool:
        return self.direct is not None and self.direct == self.predicted

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "direct": self.direct,
            "match": self.match,
            "predicted": self.predicted,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "DegreeComparison":
        return cls(
            degree=data["degree"], direct=data["direct"], predicted=data["predicted"]
        )


def compare(direct: Sequence[int], predicted: Sequence[int]) -> list[DegreeComparison]:
    """
    Pair the two sequences degree by degree. A degree present on one side
    only never matches.
    """
    return [
        DegreeComparison(degree=n, direct=d, predicted=p)
        for n, (d, p) in enumerate(zip_longest(direct, predicted))
    ]


@dataclass
class LemmaReport:
    """
    Dimension checks of `H_n(h) = sum_(p+q=n) [Lambda^p(I)]^g (x) H_q(g)` and
    `H_n(h; h) = sum_(p+q=n) H_p(I; h)^g (x) H_q(g)`.
    """

    name: str
    lie_rows: list[DegreeComparison]
    adjoint_rows: list[DegreeComparison]

    @property
    def ok(self) -> bool:
        return all(row.match for row in self.lie_rows + self.adjoint_rows)

    def to_json(self) -> dict[str, Any]:
        return {
            "adjoint": [row.to_json() for row in self.adjoint_rows],
            "lie": [row.to_json() for row in self.lie_rows],
            "name": self.name,
            "ok": self.ok,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "LemmaReport":
        return cls(
            name=data["name"],
            lie_rows=[DegreeComparison.from_json(row) for row in data["lie"]],
            adjoint_rows=[DegreeComparison.from_json(row) for row in data["adjoint"]],
        )

    def render_text(self) -> str:
        lines = ["extension lemma for %s" % self.name]
        lines += _table(
            ["degree", "H(h)", "predicted", "H(h;h)", "predicted", "match"],
            [
                (a.degree, a.direct, a.predicted, b.direct, b.predicted, a.match and b.match)
                for a, b in zip(self.lie_rows, self.adjoint_rows)
            ],
        )
        return "\n".join(lines)


@dataclass
class InvariantActionReport:
    """
    Comparison of `H_n(C^g)` with the invariants of the action induced on
    `H_n(C)`.
    """

    name: str
    degree: int
    subcomplex_dim: int
    induced_invariant_dim: int

    @property
    def ok(self) -> bool:
        return self.subcomplex_dim == self.induced_invariant_dim

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "induced_invariant_dim": self.induced_invariant_dim,
            "name": self.name,
            "ok": self.ok,
            "subcomplex_dim": self.subcomplex_dim,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "InvariantActionReport":
        return cls(
            name=data["name"],
            degree=data["degree"],
            subcomplex_dim=data["subcomplex_dim"],
            induced_invariant_dim=data["induced_invariant_dim"],
        )

    def render_text(self) -> str:
        return "%s degree %d: H(C^g) = %d, H(C)^g = %d" % (
            self.name,
            self.degree,
            self.subcomplex_dim,
            self.induced_invariant_dim,
        )


@dataclass
class HypothesisAClass:
    index: int
    found: bool
    in_ideal_block: bool
    representative: Optional[Vector] = None

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "found": self.found,
            "in_ideal_block": self.in_ideal_block,
            "index": self.index,
        }
        if self.representative is not None:
            data["representative"] = vector_to_json(self.representative)
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "HypothesisAClass":
        representative = data.get("representative")
        return cls(
            index=data["index"],
            found=data["found"],
            in_ideal_block=data["in_ideal_block"],
            representative=(
                vector_from_json(representative) if representative is not None else None
            ),
        )


@dataclass
class HypothesisAReport:
    """
    Whether every class of `K_n`, pushed into the Leibniz complex, has an
    h-invariant representative.
    """

    degree: int
    classes: list[HypothesisAClass] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.found for c in self.classes)

    def to_json(self) -> dict[str, Any]:
        return {
            "classes": [c.to_json() for c in self.classes],
            "degree": self.degree,
            "ok": self.ok,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "HypothesisAReport":
        return cls(
            degree=data["degree"],
            classes=[HypothesisAClass.from_json(c) for c in data["classes"]],
        )

    def render_text(self) -> str:
        if not self.classes:
            return "K_%d = 0, nothing to check" % self.degree
        found = sum(c.found for c in self.classes)
        return "K_%d: %d of %d classes have an h-invariant representative" % (
            self.degree,
            found,
            len(self.classes),
        )


@dataclass
class StructureReport:
    """
    Comparison of direct Leibniz homology with `Lambda*(I)^g (x) T(K_*)`.
    """

    name: str
    invariant_dims: tuple[int, ...]
    k_dims: tuple[int, ...]
    predicted: PoincareSeries
    direct: tuple[int, ...]
    hypothesis_a: list[HypothesisAReport] = field(default_factory=list)

    @property
    def rows(self) -> list[DegreeComparison]:
        return compare(self.direct, self.predicted.coefficients)

    @property
    def ok(self) -> bool:
        return all(row.match for row in self.rows) and all(
            report.ok for report in self.hypothesis_a
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "degrees": [row.to_json() for row in self.rows],
            "direct": list(self.direct),
            "hypothesis_a": [report.to_json() for report in self.hypothesis_a],
            "invariant_dims": list(self.invariant_dims),
            "k_dims": list(self.k_dims),
            "name": self.name,
            "ok": self.ok,
            "predicted": self.predicted.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "StructureReport":
        return cls(
            name=data["name"],
            invariant_dims=tuple(data["invariant_dims"]),
            k_dims=tuple(data["k_dims"]),
            predicted=PoincareSeries(tuple(data["predicted"])),
            direct=tuple(data["direct"]),
            hypothesis_a=[
                HypothesisAReport.from_json(r) for r in data["hypothesis_a"]
            ],
        )

    def render_text(self) -> str:
        lines = [
            "structure theorem for %s" % self.name,
            "invariants of Lambda*(I): %s" % list(self.invariant_dims),
            "dimensions of K: %s" % list(self.k_dims),
            "predicted series: %s" % self.predicted.render_text(),
        ]
        lines += _table(
            ["degree", "direct", "predicted", "match"],
            [(r.degree, r.direct, r.predicted, r.match) for r in self.rows],
        )
        lines += [report.render_text() for report in self.hypothesis_a]
        return "\n".join(lines)


@dataclass
class HRReport:
    """
    Comparison of `dim HR_n(h)` with
    `dim H_(n+3)(g) + sum_i dim K_(n+1-i) dim H_i(g)`.
    """

    name: str
    degree: int
    direct: int
    delta_term: int
    summands: list[tuple[int, int, int]]
    "Triples `(i, dim K_(n+1-i), dim H_i(g))`."

    @property
    def predicted(self) -> int:
        return self.delta_term + sum(k * h for _, k, h in self.summands)

    @property
    def ok(self) -> bool:
        return self.direct == self.predicted

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "delta_term": self.delta_term,
            "direct": self.direct,
            "name": self.name,
            "ok": self.ok,
            "predicted": self.predicted,
            "summands": [
                {"i": i, "k_dim": k, "lie_dim": h} for i, k, h in self.summands
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "HRReport":
        return cls(
            name=data["name"],
            degree=data["degree"],
            direct=data["direct"],
            delta_term=data["delta_term"],
            summands=[(s["i"], s["k_dim"], s["lie_dim"]) for s in data["summands"]],
        )

    def render_text(self) -> str:
        terms = ["H_%d(g) = %d" % (self.degree + 3, self.delta_term)]
        terms += [
            "K_%d x H_%d(g) = %d x %d" % (self.degree + 1 - i, i, k, h)
            for i, k, h in self.summands
            if k and h
        ]
        return "HR_%d(%s): direct %d, predicted %d (%s)%s" % (
            self.degree,
            self.name,
            self.direct,
            self.predicted,
            " + ".join(terms),
            "" if self.ok else ", MISMATCH",
        )


@dataclass
class SplittingReport:
    """
    Check of `H_n(I; h)^g = [Lambda^(n+1)(I)]^g + K_n`, with `zeta_*` injective
    on the first summand.
    """

    name: str
    degree: int
    homology_dim: int
    wedge_invariant_dim: int
    k_dim: int
    zeta_rank: int

    @property
    def ok(self) -> bool:
        return (
            self.homology_dim == self.wedge_invariant_dim + self.k_dim
            and self.zeta_rank == self.wedge_invariant_dim
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "homology_dim": self.homology_dim,
            "k_dim": self.k_dim,
            "name": self.name,
            "ok": self.ok,
            "wedge_invariant_dim": self.wedge_invariant_dim,
            "zeta_rank": self.zeta_rank,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SplittingReport":
        return cls(
            name=data["name"],
            degree=data["degree"],
            homology_dim=data["homology_dim"],
            wedge_invariant_dim=data["wedge_invariant_dim"],
            k_dim=data["k_dim"],
            zeta_rank=data["zeta_rank"],
        )

    def render_text(self) -> str:
        return "H_%d(I;h)^g of %s: %d = %d + %d, zeta rank %d" % (
            self.degree,
            self.name,
            self.homology_dim,
            self.wedge_invariant_dim,
            self.k_dim,
            self.zeta_rank,
        )
