"""Adapted Young tableaux and the classification of totally geodesic submanifolds.

A totally geodesic submanifold of a product ``M = M_1 x ... x M_r`` of
rank-one symmetric spaces splits as (flat part) x (semisimple part).  The
semisimple part is encoded by a Young diagram whose boxes carry totally
geodesic inclusions into distinct factors of ``M``: each row represents one
rank-one factor of the submanifold, sitting diagonally across the factors
named by its boxes, and all inclusions in a row must be mutually homothetic.
The flat part is a Euclidean factor inside the product of the remaining
maximal flats and is classified by its dimension alone.

The curvature of a diagonal row is an exact rational: for row entries of
curvatures ``c'_1, ..., c'_m`` it equals ``prod(c') / e_{m-1}(c')`` with
``e_{m-1}`` the elementary symmetric polynomial of degree m-1, equivalently
``1/c = sum(1/c'_i)``.

Enumeration is per labelled factor subset: two tableaux that differ only by
an ambient isometry permuting isometric factors are still listed separately,
and isometric submanifolds arising from genuinely different tableaux are not
merged (they may be non-congruent).  Everything here is exact; no floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .catalog import (
    RankOneSpace,
    TotGeodInclusion,
    are_homothetic,
    list_totally_geodesic,
    normalize,
)

Partition = tuple[int, ...]


@dataclass(frozen=True)
class ProductSpace:
    """An ordered product of rank-one symmetric spaces, all of one type.

    Factors are normalized on construction.  Mixing compact duals with
    non-compact factors is rejected: a diagonal across opposite types is
    necessarily flat, so such products never carry diagonal semisimple
    submanifolds and are out of scope by construction.
    """

    factors: tuple[RankOneSpace, ...]

    def __post_init__(self) -> None:
        factors = tuple(normalize(f) for f in self.factors)
        if not factors:
            raise ValueError("a product space needs at least one factor")
        if len({f.compact_dual for f in factors}) != 1:
            raise ValueError("factors must all be compact duals or all non-compact")
        object.__setattr__(self, "factors", factors)

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def compact_dual(self) -> bool:
        return self.factors[0].compact_dual

    def factor(self, index: int) -> RankOneSpace:
        """Factor by 1-based index."""
        if not 1 <= index <= self.r:
            raise ValueError(f"factor index {index} out of range 1..{self.r}")
        return self.factors[index - 1]

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Box:
    """One tableau box: a totally geodesic inclusion into factor ``factor``."""

    factor: int
    inclusion: TotGeodInclusion

    def content_key(self) -> tuple:
        sub = self.inclusion.sub
        return (*sub.sort_key(), self.factor)

    def __str__(self) -> str:
        return f"({self.factor}: {self.inclusion})"


Row = tuple[Box, ...]


def _row_key(row: Row) -> tuple:
    return (-len(row), tuple(box.content_key() for box in row))


@dataclass(frozen=True)
class AdaptedTableau:
    """A Young tableau adapted to a product space, in canonical form.

    Canonical form: boxes inside a row sorted by factor index, rows sorted
    by length (descending) and then lexicographically by box content.
    Construction validates the Young shape, the disjointness of factor
    indices across boxes, and pairwise homothety inside each row.
    """

    rows: tuple[Row, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for row in self.rows:
            if not row:
                raise ValueError("tableau rows must be non-empty")
            if list(row) != sorted(row, key=lambda b: b.factor):
                raise ValueError("boxes in a row must be sorted by factor index")
            for box in row:
                if box.factor in seen:
                    raise ValueError(f"factor {box.factor} appears in more than one box")
                seen.add(box.factor)
            first = row[0].inclusion.sub
            for box in row[1:]:
                if not are_homothetic(first, box.inclusion.sub):
                    raise ValueError("row entries must be mutually homothetic")
        if list(self.rows) != sorted(self.rows, key=_row_key):
            raise ValueError("rows are not in canonical order")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Box]]) -> "AdaptedTableau":
        """Build the canonical-form tableau with the given rows."""
        sorted_rows = tuple(
            sorted((tuple(sorted(row, key=lambda b: b.factor)) for row in rows), key=_row_key)
        )
        return cls(sorted_rows)

    @property
    def shape(self) -> Partition:
        return tuple(len(row) for row in self.rows)

    def box_factors(self) -> frozenset[int]:
        return frozenset(box.factor for row in self.rows for box in row)

    def sort_key(self) -> tuple:
        return tuple(_row_key(row) for row in self.rows)

    def is_adapted_to(self, M: ProductSpace) -> bool:
        """Check that every box inclusion targets the factor it indexes."""
        try:
            return all(
                box.inclusion.ambient == M.factor(box.factor)
                for row in self.rows
                for box in row
            )
        except ValueError:
            return False

    def __str__(self) -> str:
        return "; ".join(" | ".join(str(b) for b in row) for row in self.rows) or "(empty)"


@dataclass(frozen=True)
class ClassifiedSubmanifold:
    """Isometry type of one totally geodesic submanifold of a product.

    ``semisimple_factors`` lists one rank-one space per tableau row, with
    the exact diagonal curvature; ``flat_dim`` is the dimension of the flat
    part, carried by the ``complement_factors`` (the factors not covered by
    the tableau, each contributing one flat direction at most).
    """

    semisimple_factors: tuple[RankOneSpace, ...]
    flat_dim: int
    tableau: AdaptedTableau
    complement_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.semisimple_factors) != len(self.tableau.rows):
            raise ValueError("one semisimple factor per tableau row expected")
        if not 0 <= self.flat_dim <= len(self.complement_factors):
            raise ValueError("flat dimension exceeds the available flat directions")
        if set(self.complement_factors) & self.tableau.box_factors():
            raise ValueError("flat factors must be disjoint from tableau factors")

    @property
    def total_rank(self) -> int:
        return len(self.semisimple_factors) + self.flat_dim

    def isometry_type(self) -> str:
        parts = [str(f) for f in self.semisimple_factors]
        if self.flat_dim:
            parts.append(f"R^{self.flat_dim}")
        return " x ".join(parts) if parts else "point"


def diagonal_curvature(row_curvatures: Sequence[Fraction | int | str]) -> Fraction:
    """Exact curvature of a diagonal assembled from curvatures ``c'_i``.

    Returns ``prod(c') / e_{m-1}(c')`` where ``e_{m-1}`` is the elementary
    symmetric polynomial of degree m-1 in the m inputs.  Symmetric in its
    arguments; the single-input case returns the input (``e_0 = 1``).
    """
    cs = [Fraction(c) for c in row_curvatures]
    if not cs:
        raise ValueError("need at least one curvature")
    if any(c <= 0 for c in cs):
        raise ValueError("curvatures must be positive")
    numerator = _product(cs)
    e = sum(
        (_product(combo) for combo in itertools.combinations(cs, len(cs) - 1)),
        Fraction(0),
    )
    return numerator / e


def _product(values: Iterable[Fraction]) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out


def _set_partitions(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """All partitions of ``items`` into unordered non-empty blocks.

    Deterministic: blocks keep the input order of their elements and the
    stream order depends only on the input order.
    """
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [(first,)] + partition
        for i in range(len(partition)):
            augmented = list(partition)
            augmented[i] = (first, *augmented[i])
            yield augmented


def _rows_for_block(M: ProductSpace, block: Sequence[int]) -> list[Row]:
    """Every admissible row covering exactly the factors in ``block``.

    A row picks, for each factor in the block, one totally geodesic class
    (proper or the factor itself), all sharing one homothety type.
    """
    per_factor: dict[int, dict[tuple, list[TotGeodInclusion]]] = {}
    for i in sorted(block):
        groups: dict[tuple, list[TotGeodInclusion]] = {}
        for inc in list_totally_geodesic(M.factor(i), include_improper=True):
            cls = (inc.sub.field.order, inc.sub.n)
            groups.setdefault(cls, []).append(inc)
        per_factor[i] = groups
    common = set.intersection(*(set(g) for g in per_factor.values()))
    rows: list[Row] = []
    for cls in sorted(common):
        choices = [
            [Box(i, inc) for inc in sorted(per_factor[i][cls], key=lambda inc: inc.sub.sort_key())]
            for i in sorted(block)
        ]
        for combo in itertools.product(*choices):
            rows.append(tuple(combo))
    return rows


def enumerate_tableaux(M: ProductSpace, subset: Iterable[int]) -> Iterator[AdaptedTableau]:
    """All adapted tableaux whose boxes cover exactly ``subset``, each once.

    The subset is given by 1-based factor indices.  The stream is finite,
    duplicate-free and sorted in canonical tableau order.
    """
    indices = tuple(sorted(set(subset)))
    if not indices:
        raise ValueError("subset of factors must be non-empty")
    for i in indices:
        M.factor(i)  # range check
    tableaux: list[AdaptedTableau] = []
    for partition in _set_partitions(indices):
        block_rows = [_rows_for_block(M, block) for block in partition]
        if any(not rows for rows in block_rows):
            continue
        for combo in itertools.product(*block_rows):
            tableaux.append(AdaptedTableau.from_rows(combo))
    tableaux.sort(key=AdaptedTableau.sort_key)
    return iter(tableaux)


def _classify_tableau(M: ProductSpace, tableau: AdaptedTableau) -> tuple[RankOneSpace, ...]:
    """Isometry data of the semisimple part: one rank-one space per row."""
    factors = []
    for row in tableau.rows:
        model = row[0].inclusion.sub
        curvature = diagonal_curvature([box.inclusion.sub.curvature for box in row])
        factors.append(RankOneSpace(model.field, model.n, curvature, M.compact_dual))
    return tuple(factors)


def classify(M: ProductSpace) -> Iterator[ClassifiedSubmanifold]:
    """Every totally geodesic submanifold class of ``M``, lazily.

    Yields one entry per (adapted tableau over a factor subset S, flat
    dimension d) pair, with S ranging over all subsets including the empty
    one (purely flat submanifolds, the point being d = 0) and
    0 <= d <= r - |S|.  Deterministic order: subsets by size then
    lexicographically, tableaux in canonical order, then d ascending.
    """
    r = M.r
    all_indices = range(1, r + 1)
    for size in range(r + 1):
        for subset in itertools.combinations(all_indices, size):
            complement = tuple(i for i in all_indices if i not in subset)
            if size == 0:
                tableaux: Iterable[AdaptedTableau] = [AdaptedTableau(())]
            else:
                tableaux = enumerate_tableaux(M, subset)
            for tableau in tableaux:
                semisimple = _classify_tableau(M, tableau)
                for d in range(r - size + 1):
                    yield ClassifiedSubmanifold(semisimple, d, tableau, complement)


def count_classes(M: ProductSpace) -> int:
    """Number of entries in the classification stream.

    Materializes the full stream; the count grows exponentially in the
    number of factors.
    """
    return sum(1 for _ in classify(M))
