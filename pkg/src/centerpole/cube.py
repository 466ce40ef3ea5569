"""Hypercube combinatorics behind the sandwich constructions.

Points of the k-cube ``{0,1}^k``, its coordinate-sum slices, the
three-layer "sandwich" subsets of ``Z^(1+k)``, the (head, tail-sum)
projection, and the parity helpers (odd support, even floor) used by
the covering machinery.

All integer arithmetic is exact.  Coordinates are required to stay in
the signed 64-bit range so results stay portable to fixed-width
consumers; violating that raises instead of wrapping.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import comb
from typing import Iterable, Iterator

_COORD_BOUND = 2**63


class CoordinateOverflowError(OverflowError):
    """A coordinate left the signed 64-bit range the toolkit guarantees."""


class DimensionMismatchError(ValueError):
    """Operands live in different ambient dimensions."""


@dataclass(frozen=True, slots=True)
class LatticePoint:
    """An immutable integer vector with componentwise arithmetic."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        for v in self.coords:
            if v is True or v is False or not isinstance(v, int):
                raise TypeError(f"lattice coordinate {v!r} is not an int")
            if not -_COORD_BOUND <= v < _COORD_BOUND:
                raise CoordinateOverflowError(
                    f"coordinate {v} outside the signed 64-bit range"
                )

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _same_dim(self, other: "LatticePoint") -> None:
        if len(self.coords) != len(other.coords):
            raise DimensionMismatchError(
                f"dimension {len(self.coords)} vs {len(other.coords)}"
            )

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        self._same_dim(other)
        return LatticePoint(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        self._same_dim(other)
        return LatticePoint(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(tuple(-a for a in self.coords))

    def scaled(self, n: int) -> "LatticePoint":
        return LatticePoint(tuple(n * a for a in self.coords))

    def norm_inf(self) -> int:
        return max((abs(a) for a in self.coords), default=0)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __lt__(self, other: "LatticePoint") -> bool:
        self._same_dim(other)
        return self.coords < other.coords


def lattice(*coords: int) -> LatticePoint:
    return LatticePoint(tuple(coords))


def unit_vector(dim: int, axis: int) -> LatticePoint:
    if not 0 <= axis < dim:
        raise ValueError(f"axis {axis} outside dimension {dim}")
    return LatticePoint(tuple(1 if i == axis else 0 for i in range(dim)))


def origin(dim: int) -> LatticePoint:
    return LatticePoint((0,) * dim)


def reflect(center: LatticePoint, point: LatticePoint) -> LatticePoint:
    """Mirror image of ``point`` through ``center``: 2*center - point."""
    return center.scaled(2) - point


@dataclass(frozen=True, slots=True)
class CubePoint:
    """A vertex of the unit cube: every coordinate is 0 or 1."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        for b in self.bits:
            if b not in (0, 1) or b is True or b is False:
                raise ValueError(f"cube coordinate {b!r} is not 0 or 1")

    @property
    def dim(self) -> int:
        return len(self.bits)

    def coordinate_sum(self) -> int:
        return sum(self.bits)

    def as_lattice(self) -> LatticePoint:
        return LatticePoint(self.bits)

    def with_layer(self, layer: int) -> LatticePoint:
        """Embed into one more dimension with ``layer`` prepended."""
        return LatticePoint((layer,) + self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)


def cube_points(k: int) -> Iterator[CubePoint]:
    """All 2^k vertices of the k-cube in lexicographic order."""
    if k < 0:
        raise ValueError("cube dimension must be nonnegative")
    for bits in product((0, 1), repeat=k):
        yield CubePoint(bits)


class SliceDirection(Enum):
    BELOW = "below"
    ABOVE = "above"


@dataclass(frozen=True, slots=True)
class Slice:
    """Vertices of the k-cube whose coordinate sum is < s (below) or > s (above)."""

    k: int
    s: int
    direction: SliceDirection
    points: frozenset[CubePoint]

    def __post_init__(self) -> None:
        expected = slice_size(self.k, self.s, self.direction)
        if len(self.points) != expected:
            raise ValueError(
                f"slice holds {len(self.points)} points, expected {expected}"
            )
        for p in self.points:
            if p.dim != self.k:
                raise DimensionMismatchError(f"point {p} not in the {self.k}-cube")
            if not _in_slice(p.coordinate_sum(), self.s, self.direction):
                raise ValueError(f"point {p} violates the slice bound")

    def __len__(self) -> int:
        return len(self.points)


def _in_slice(total: int, s: int, direction: SliceDirection) -> bool:
    return total < s if direction is SliceDirection.BELOW else total > s


def slice_size(k: int, s: int, direction: SliceDirection) -> int:
    if direction is SliceDirection.BELOW:
        return sum(comb(k, j) for j in range(0, min(s, k + 1)) if j <= k)
    return sum(comb(k, j) for j in range(max(s + 1, 0), k + 1))


def build_slice(k: int, s: int, direction: SliceDirection) -> Slice:
    if k < 0:
        raise ValueError("cube dimension must be nonnegative")
    pts = frozenset(
        p for p in cube_points(k) if _in_slice(p.coordinate_sum(), s, direction)
    )
    return Slice(k=k, s=s, direction=direction, points=pts)


@dataclass(frozen=True, slots=True)
class Sandwich:
    """Three-layer subset of Z^(1+k).

    Layer -1 carries the below-s slice, layer 0 the below-k slice, and
    layer +1 the above-s slice of the k-cube.
    """

    k: int
    s: int
    lower: frozenset[LatticePoint]
    middle: frozenset[LatticePoint]
    upper: frozenset[LatticePoint]

    def layer(self, which: int) -> frozenset[LatticePoint]:
        try:
            return {-1: self.lower, 0: self.middle, 1: self.upper}[which]
        except KeyError:
            raise ValueError(f"layer must be -1, 0, or 1, got {which}") from None

    def points(self) -> frozenset[LatticePoint]:
        return self.lower | self.middle | self.upper

    def __len__(self) -> int:
        return len(self.lower) + len(self.middle) + len(self.upper)


def build_sandwich(k: int, s: int) -> Sandwich:
    if k < 0:
        raise ValueError("cube dimension must be nonnegative")
    below = build_slice(k, s, SliceDirection.BELOW).points
    mid = build_slice(k, k, SliceDirection.BELOW).points
    above = build_slice(k, s, SliceDirection.ABOVE).points
    return Sandwich(
        k=k,
        s=s,
        lower=frozenset(p.with_layer(-1) for p in below),
        middle=frozenset(p.with_layer(0) for p in mid),
        upper=frozenset(p.with_layer(1) for p in above),
    )


def sandwich_size(k: int, s: int) -> int:
    """Cardinality of the (k, s) sandwich.

    For 0 <= s <= k this is the closed form 2^(k+1) - 1 - C(k, s); outside
    that range the layers are counted directly.
    """
    if k < 0:
        raise ValueError("cube dimension must be nonnegative")
    if 0 <= s <= k:
        return 2 ** (k + 1) - 1 - comb(k, s)
    return (
        slice_size(k, s, SliceDirection.BELOW)
        + (2**k - 1)
        + slice_size(k, s, SliceDirection.ABOVE)
    )


def sandwich_contains(k: int, s: int, point: LatticePoint) -> bool:
    """Exact membership in the (k, s) sandwich without building the set."""
    if point.dim != k + 1:
        return False
    layer = point[0]
    tail = point.coords[1:]
    if any(b not in (0, 1) for b in tail):
        return False
    total = sum(tail)
    if layer == -1:
        return total < s
    if layer == 0:
        return total < k
    if layer == 1:
        return total > s
    return False


def sigma0(point: LatticePoint) -> tuple[int, int]:
    """Project (x0, x1, ..., xk) to (x0, x1 + ... + xk)."""
    if point.dim < 1:
        raise DimensionMismatchError("projection needs at least one coordinate")
    return point[0], sum(point.coords[1:])


def parity_support(point: LatticePoint) -> frozenset[int]:
    """Indices of the odd coordinates."""
    return frozenset(i for i, v in enumerate(point.coords) if v % 2 != 0)


def even_floor(point: LatticePoint) -> LatticePoint:
    """Round every odd coordinate down to the next even integer."""
    return LatticePoint(tuple(v if v % 2 == 0 else v - 1 for v in point.coords))


class LShape(Enum):
    """Which L-shaped triple bounds the (head, tail-sum) image.

    For anchor a, LOWER is {(0,a), (1,a), (1,a+1)} and UPPER is
    {(0,a), (0,a+1), (1,a+1)}.
    """

    LOWER = "lowerL"
    UPPER = "upperL"


def profile_triple(a: int, shape: LShape) -> frozenset[tuple[int, int]]:
    if shape is LShape.LOWER:
        return frozenset({(0, a), (1, a), (1, a + 1)})
    return frozenset({(0, a), (0, a + 1), (1, a + 1)})


@dataclass(frozen=True, slots=True)
class SigmaZeroSet:
    """A subset of the (k+1)-cube confined to one facet whose
    (head, tail-sum) image fits inside an L-shaped triple.

    ``facet_axis`` and ``facet_level`` pin the facet (coordinate
    ``facet_axis`` equals ``facet_level`` on every point); ``anchor``
    and ``shape`` pin the triple.  Every subset of a valid instance is
    again a valid instance with the same parameters.
    """

    k: int
    points: frozenset[CubePoint]
    facet_axis: int
    facet_level: int
    anchor: int
    shape: LShape

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not 0 <= self.facet_axis <= self.k:
            raise ValueError(f"facet axis {self.facet_axis} outside 0..{self.k}")
        if self.facet_level not in (0, 1):
            raise ValueError(f"facet level must be 0 or 1, got {self.facet_level}")
        if not 0 <= self.anchor <= self.k - 1:
            raise ValueError(f"anchor {self.anchor} outside 0..{self.k - 1}")
        triple = profile_triple(self.anchor, self.shape)
        for p in self.points:
            if p.dim != self.k + 1:
                raise DimensionMismatchError(
                    f"point {p} not in the {self.k + 1}-cube"
                )
            if p[self.facet_axis] != self.facet_level:
                raise ValueError(f"point {p} off the declared facet")
            if sigma0(p.as_lattice()) not in triple:
                raise ValueError(f"point {p} outside the L-shaped triple")

    def lattice_points(self) -> frozenset[LatticePoint]:
        return frozenset(p.as_lattice() for p in self.points)

    def __len__(self) -> int:
        return len(self.points)


def enumerate_maximal_sigma0_sets(k: int) -> list[SigmaZeroSet]:
    """All inclusion-maximal facet sets of the (k+1)-cube with an L-shaped profile.

    One entry per (facet axis, facet level, anchor, shape), i.e.
    (k+1) * 2 * k * 2 entries, in that loop order.  Distinct parameter
    tuples may describe equal point sets; duplicates are kept.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    all_points = list(cube_points(k + 1))
    out: list[SigmaZeroSet] = []
    for axis in range(k + 1):
        for level in (0, 1):
            facet = [p for p in all_points if p[axis] == level]
            for a in range(k):
                for shape in (LShape.LOWER, LShape.UPPER):
                    triple = profile_triple(a, shape)
                    pts = frozenset(
                        p for p in facet if sigma0(p.as_lattice()) in triple
                    )
                    out.append(
                        SigmaZeroSet(
                            k=k,
                            points=pts,
                            facet_axis=axis,
                            facet_level=level,
                            anchor=a,
                            shape=shape,
                        )
                    )
    return out


def points_to_json(points: Iterable[LatticePoint]) -> list[list[int]]:
    """Deterministic JSON form: sorted list of coordinate arrays."""
    return sorted([list(p.coords) for p in points])


def points_from_json(data: Iterable[Iterable[int]]) -> frozenset[LatticePoint]:
    return frozenset(LatticePoint(tuple(int(v) for v in row)) for row in data)


def sandwich_to_json(s: Sandwich) -> dict:
    return {
        "k": s.k,
        "s": s.s,
        "cardinality": len(s),
        "layers": {
            "-1": points_to_json(s.lower),
            "0": points_to_json(s.middle),
            "1": points_to_json(s.upper),
        },
        "points": points_to_json(s.points()),
    }
