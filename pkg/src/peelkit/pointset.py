"""Point sets with exact rational coordinates.

Points are tuples of ``fractions.Fraction``; a PointSet is an ordered, labeled
collection of them in a fixed dimension.  All geometric predicates elsewhere in
the package consume these exactly — no floating point enters any decision.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import InputError

Point = tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Coerce ints, decimal-free strings like '-3/4' or '5', and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational scalar: {value!r}") from exc
    raise InputError(f"not a rational scalar: {value!r} (floats are not accepted)")


def as_point(coords: Sequence, dim: int | None = None) -> Point:
    pt = tuple(to_fraction(c) for c in coords)
    if dim is not None and len(pt) != dim:
        raise InputError(f"point {coords!r} has {len(pt)} coordinates, expected {dim}")
    return pt


def origin(dim: int) -> Point:
    return (Fraction(0),) * dim


class PointSet:
    """An ordered list of points in Q^dim with optional labels and block ids.

    Duplicates are representable (the general-position predicate reports them);
    operations whose contracts require general position reject such sets with a
    witness rather than silently proceeding.
    """

    __slots__ = ("dim", "points", "labels", "blocks", "_int_cache")

    def __init__(
        self,
        dim: int,
        points: Iterable[Sequence],
        labels: Sequence[str] | None = None,
        blocks: Sequence[int] | None = None,
    ):
        if not isinstance(dim, int) or dim < 1:
            raise InputError(f"dimension must be a positive integer, got {dim!r}")
        self.dim = dim
        self.points: tuple[Point, ...] = tuple(as_point(p, dim) for p in points)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != len(self.points):
                raise InputError("labels length does not match point count")
        self.labels = labels
        if blocks is not None:
            blocks = tuple(int(b) for b in blocks)
            if len(blocks) != len(self.points):
                raise InputError("blocks length does not match point count")
        self.blocks = blocks
        self._int_cache: list[tuple[int, ...]] | None = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.dim == other.dim
            and self.points == other.points
            and self.labels == other.labels
            and self.blocks == other.blocks
        )

    def __repr__(self) -> str:
        return f"PointSet(dim={self.dim}, n={len(self.points)})"

    def subset(self, indices: Sequence[int]) -> "PointSet":
        """New PointSet restricted to ``indices`` (order preserved as given)."""
        idx = list(indices)
        return PointSet(
            self.dim,
            [self.points[i] for i in idx],
            labels=None if self.labels is None else [self.labels[i] for i in idx],
            blocks=None if self.blocks is None else [self.blocks[i] for i in idx],
        )

    def appended(self, point: Sequence) -> "PointSet":
        """New PointSet with one extra point (labels/blocks dropped)."""
        return PointSet(self.dim, list(self.points) + [as_point(point, self.dim)])

    def with_blocks(self, blocks: Sequence[int]) -> "PointSet":
        return PointSet(self.dim, self.points, labels=self.labels, blocks=blocks)

    def integer_coords(self) -> list[tuple[int, ...]]:
        """All points scaled by the common denominator LCM: an exact integer grid.

        Uniform positive scaling preserves every orientation / hull / betweenness
        predicate, so sign tests can run on plain ints (much faster than Fraction).
        """
        if self._int_cache is None:
            scale = 1
            for p in self.points:
                for c in p:
                    scale = lcm(scale, c.denominator)
            self._int_cache = [
                tuple(c.numerator * (scale // c.denominator) for c in p) for p in self.points
            ]
        return self._int_cache
