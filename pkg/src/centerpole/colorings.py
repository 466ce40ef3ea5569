"""Witness colorings over rational spaces.

The cone coloring splits punctured space into the cones over the
facets of a centered simplex.  The extension rules lift a coloring of
X to X x R by pinning special levels (where added symmetry centers and
their mirror images live) and painting the bands between them with
fresh constant colors.  Group-multiplicative mirror expressions are
specialized to additive notation throughout: the mirror of x through a
is 2a - x.

Every rule is total and exact over rational inputs; the scan harness
samples far points and reports monochromatic symmetric pairs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable, Sequence

from .geometry import (
    RationalPoint,
    affine_hull_dim,
    dot,
    fraction_to_json,
    point_to_json,
)


def _as_coords(point, dim: int) -> tuple[Fraction, ...]:
    if isinstance(point, RationalPoint):
        cs = point.coords
    else:
        cs = tuple(
            v if isinstance(v, Fraction) else Fraction(v) for v in point
        )
    if len(cs) != dim:
        raise ValueError(f"point has dimension {len(cs)}, rule expects {dim}")
    return cs


@dataclass(frozen=True)
class ColoringRule:
    """A total coloring: ``evaluate`` maps any rational or lattice
    point of the stated dimension to a color in {0..color_count-1}."""

    dim: int
    color_count: int
    evaluate: Callable[..., int]
    label: str = ""

    def __call__(self, point) -> int:
        return self.evaluate(point)


@dataclass(frozen=True)
class SimplexSpec:
    """d+1 affinely independent vertices in R^d summing to zero."""

    vertices: tuple[RationalPoint, ...]

    def __post_init__(self) -> None:
        verts = tuple(
            v if isinstance(v, RationalPoint) else RationalPoint(tuple(v))
            for v in self.vertices
        )
        object.__setattr__(self, "vertices", verts)
        d = len(verts) - 1
        if d < 1:
            raise ValueError("a simplex needs at least two vertices")
        for v in verts:
            if v.dim != d:
                raise ValueError(
                    f"{len(verts)} vertices must live in dimension {d}"
                )
        total = verts[0]
        for v in verts[1:]:
            total = total + v
        if any(c != 0 for c in total.coords):
            raise ValueError("vertices must sum to zero")
        if affine_hull_dim(list(verts)) != d:
            raise ValueError("vertices must be affinely independent")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


def standard_simplex(d: int) -> SimplexSpec:
    """Unit vectors of R^d together with minus their sum."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    verts = [
        RationalPoint(tuple(Fraction(1 if i == axis else 0) for i in range(d)))
        for axis in range(d)
    ]
    verts.append(RationalPoint(tuple(Fraction(-1) for _ in range(d))))
    return SimplexSpec(tuple(verts))


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    work = [list(row) + [Fraction(int(i == r)) for i in range(n)]
            for r, row in enumerate(matrix)]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank][col]
        work[rank] = [v / lead for v in work[rank]]
        for r in range(n):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [v - f * w for v, w in zip(work[r], work[rank])]
        rank += 1
    return [row[n:] for row in work]


def cone_coloring(spec: SimplexSpec) -> ColoringRule:
    """Color nonzero x by the first facet its positive ray meets.

    In barycentric coordinates relative to the simplex, the ray from
    the origin through x exits across facet i exactly when the i-th
    coordinate is minimal, so the color is the smallest index attaining
    the minimum; the origin itself gets color 0.  Antipodal points swap
    minimizers and maximizers of the barycentric vector, which cannot
    share an index, so no pair {x, -x} with x != 0 is monochromatic.
    """
    d = spec.dim
    matrix = [
        [spec.vertices[i][r] for i in range(d + 1)] for r in range(d)
    ]
    matrix.append([Fraction(1)] * (d + 1))
    inverse = _invert(matrix)

    def evaluate(point) -> int:
        cs = _as_coords(point, d)
        if all(c == 0 for c in cs):
            return 0
        rhs = cs + (Fraction(1),)
        bary = [
            sum(inverse[i][j] * rhs[j] for j in range(d + 1))
            for i in range(d + 1)
        ]
        low = min(bary)
        return next(i for i, v in enumerate(bary) if v == low)

    return ColoringRule(
        dim=d, color_count=d + 1, evaluate=evaluate, label=f"cone(d={d})"
    )


def halfspace_coloring(center) -> ColoringRule:
    """Two colors split by the sign of the first nonzero coordinate of
    x - center; the center itself gets 0.  No pair {x, 2c - x} with
    x != c is monochromatic."""
    c = center if isinstance(center, RationalPoint) else RationalPoint(tuple(center))

    def evaluate(point) -> int:
        cs = _as_coords(point, c.dim)
        for value, base in zip(cs, c.coords):
            if value != base:
                return 1 if value > base else 0
        return 0

    return ColoringRule(
        dim=c.dim, color_count=2, evaluate=evaluate, label="halfspace"
    )


def pair_coloring(a, b) -> ColoringRule:
    """Two colors with no distant monochromatic pair symmetric about
    either a or b.

    Writing x = a + sigma*(b - a) + y with y orthogonal to b - a:
    fractional sigma alternates color with the parity of its floor,
    which flips under both mirrors; integral sigma with y != 0 falls
    back to the halfspace split of y, and y = 0 compares sigma against
    1 so that only x = a and x = b themselves collide.
    """
    pa = a if isinstance(a, RationalPoint) else RationalPoint(tuple(a))
    pb = b if isinstance(b, RationalPoint) else RationalPoint(tuple(b))
    if pa == pb:
        raise ValueError("pair witness needs two distinct points")
    u = pb - pa
    uu = dot(u.coords, u.coords)

    def evaluate(point) -> int:
        cs = _as_coords(point, pa.dim)
        diff = tuple(v - w for v, w in zip(cs, pa.coords))
        sigma = dot(diff, u.coords) / uu
        if sigma.denominator != 1:
            return 1 if floor(sigma) % 2 == 0 else 0
        y = tuple(v - sigma * w for v, w in zip(diff, u.coords))
        for value in y:
            if value != 0:
                return 1 if value > 0 else 0
        return 1 if sigma >= 1 else 0

    return ColoringRule(
        dim=pa.dim, color_count=2, evaluate=evaluate, label="pair"
    )


def _split_level(point, dim: int) -> tuple[tuple[Fraction, ...], Fraction]:
    cs = _as_coords(point, dim)
    return cs[:-1], cs[-1]


def plus0_extension(base: ColoringRule) -> ColoringRule:
    """Lift to X x R: keep the base coloring on the zero level and
    paint the open half-spaces below and above with colors 0 and 1."""
    if base.color_count < 2:
        raise ValueError("base coloring must use at least 2 colors")

    def evaluate(point) -> int:
        x, t = _split_level(point, base.dim + 1)
        if t == 0:
            return base.evaluate(x)
        return 0 if t < 0 else 1

    return ColoringRule(
        dim=base.dim + 1,
        color_count=base.color_count,
        evaluate=evaluate,
        label=f"plus0[{base.label}]",
    )


def plus1_extension(base: ColoringRule, aux2: ColoringRule) -> ColoringRule:
    """Lift to X x R with one added center at (0, 1).

    Levels 0, 1, 2 carry the base coloring, the two-coloring that
    witnesses the origin of X, and the derived coloring
    chi2(x) = min({0,1} minus {base(-x)}); the bands take constants
    1 (between 0 and 1), 0 (above 1, off level 2), and 2 (below 0).
    """
    if base.color_count < 3:
        raise ValueError("base coloring must use at least 3 colors")
    if aux2.color_count != 2 or aux2.dim != base.dim:
        raise ValueError("aux2 must be a 2-coloring of the base space")

    def chi2(x: tuple[Fraction, ...]) -> int:
        minus = tuple(-v for v in x)
        return min({0, 1} - {base.evaluate(minus)})

    def evaluate(point) -> int:
        x, t = _split_level(point, base.dim + 1)
        if t == 0:
            return base.evaluate(x)
        if t == 1:
            return aux2.evaluate(x)
        if t == 2:
            return chi2(x)
        if t < 0:
            return 2
        if t < 1:
            return 1
        return 0

    return ColoringRule(
        dim=base.dim + 1,
        color_count=base.color_count,
        evaluate=evaluate,
        label=f"plus1[{base.label}]",
    )


def _psi(t: Fraction, v: Fraction, w: Fraction) -> int:
    if t <= 0:
        return 3
    if t <= v:
        return 0
    if t <= w:
        return 1
    return 2


def plus2_extension(
    base: ColoringRule, A: Sequence, auxes: dict | None = None
) -> ColoringRule:
    """Lift to X x R with two added centers at positive levels.

    The level pair (v, w) picks the case after the standard reductions:
    equal levels rescale to 1; unequal levels rescale so w - v = 1 and
    split on v = 1 (with X translated so the w-center's base point is
    the origin), v = 2, or generic v.  Each case pins its finitely many
    special levels with the matching level colorings and paints the
    rest with the band coloring psi.

    ``auxes`` may supply the two-colorings the construction consumes:
    key "pair" (both centers at one level) or keys "a" and "b" (one
    per center, in level order).  Defaults are the pair and halfspace
    witnesses.
    """
    if base.color_count < 4:
        raise ValueError("base coloring must use at least 4 colors")
    if len(A) != 2:
        raise ValueError("exactly two added points are required")
    pts = [
        p if isinstance(p, RationalPoint) else RationalPoint(tuple(p))
        for p in A
    ]
    for p in pts:
        if p.dim != base.dim + 1:
            raise ValueError("added points must live in X x R")
        if p.coords[-1] <= 0:
            raise ValueError("added points must sit at positive levels")
    pts.sort(key=lambda p: p.coords[-1])
    if pts[0] == pts[1]:
        raise ValueError("added points must be distinct")
    a = RationalPoint(pts[0].coords[:-1])
    b = RationalPoint(pts[1].coords[:-1])
    level_a = pts[0].coords[-1]
    level_b = pts[1].coords[-1]
    auxes = auxes or {}
    chi0 = base.evaluate
    dim = base.dim + 1
    k = base.color_count

    def mirror(center: RationalPoint, x: tuple[Fraction, ...]) -> tuple:
        return tuple(2 * c - v for c, v in zip(center.coords, x))

    if level_a == level_b:
        if a == b:
            raise ValueError("added points must be distinct")
        sigma = 1 / level_a
        pair = auxes.get("pair") or pair_coloring(a, b)
        if pair.color_count != 2 or pair.dim != base.dim:
            raise ValueError("pair witness must be a 2-coloring of X")

        def chi2(x: tuple[Fraction, ...]) -> int:
            return min(
                {0, 1, 2} - {chi0(mirror(a, x)), chi0(mirror(b, x))}
            )

        def evaluate(point) -> int:
            x, t = _split_level(point, dim)
            t = t * sigma
            if t == 0:
                return chi0(x)
            if t == 1:
                return pair.evaluate(x)
            if t == 2:
                return chi2(x)
            return _psi(t, Fraction(1), Fraction(1))

        case = "levels-equal"
    else:
        sigma = 1 / (level_b - level_a)
        v = level_a * sigma
        w = v + 1
        aux_a = auxes.get("a") or halfspace_coloring(a)
        aux_b = auxes.get("b") or halfspace_coloring(b)
        for aux in (aux_a, aux_b):
            if aux.color_count != 2 or aux.dim != base.dim:
                raise ValueError("center witnesses must be 2-colorings of X")
        if v == 1:
            # translate so the upper center's base point is the origin
            shift = b.coords
            a_t = tuple(p - q for p, q in zip(a.coords, shift))

            def chi0_t(y: tuple[Fraction, ...]) -> int:
                return chi0(tuple(p + q for p, q in zip(y, shift)))

            def chi1(y: tuple[Fraction, ...]) -> int:
                return aux_a.evaluate(tuple(p + q for p, q in zip(y, shift)))

            def phi(y: tuple[Fraction, ...]) -> int:
                return aux_b.evaluate(tuple(p + q for p, q in zip(y, shift)))

            def chi2(y: tuple[Fraction, ...]) -> int:
                neg = tuple(-p for p in y)
                behind = chi0_t(tuple(2 * p - q for p, q in zip(a_t, y)))
                ahead = chi0_t(tuple(2 * p + q for p, q in zip(a_t, y)))
                fx, fnx = phi(y), phi(neg)
                if fx == fnx:
                    return min({0, 1, 2} - {ahead, behind})
                if behind != fx and fnx != ahead:
                    return fx
                if behind == fx and fnx != ahead:
                    return min({0, 1, 2} - {fnx, behind})
                if behind != fx and fnx == ahead:
                    return fx
                return fnx

            def evaluate(point) -> int:
                x, t = _split_level(point, dim)
                y = tuple(p - q for p, q in zip(x, shift))
                t = t * sigma
                if t == 0:
                    return chi0_t(y)
                if t == 1:
                    return chi1(y)
                if t == 2:
                    return chi2(y)
                if t == 3:
                    return 1 - chi1(tuple(-p for p in y))
                if t == 4:
                    return min({0, 1} - {chi0_t(tuple(-p for p in y))})
                return _psi(t, Fraction(1), Fraction(2))

            case = "v=1,w=2"
        elif v == 2:

            def evaluate(point) -> int:
                x, t = _split_level(point, dim)
                t = t * sigma
                if t == 0:
                    return chi0(x)
                if t == 1:
                    return 1 - aux_b.evaluate(mirror(a, x))
                if t == 2:
                    return aux_a.evaluate(x)
                if t == 3:
                    return aux_b.evaluate(x)
                if t == 4:
                    return min(
                        {0, 1, 2} - {chi0(mirror(a, x)), aux_a.evaluate(mirror(b, x))}
                    )
                if t == 6:
                    return min({0, 1} - {chi0(mirror(b, x))})
                return _psi(t, Fraction(2), Fraction(3))

            case = "v=2,w=3"
        else:
            band_at_two = _psi(Fraction(2), v, w)

            def evaluate(point) -> int:
                x, t = _split_level(point, dim)
                t = t * sigma
                if t == 0:
                    return chi0(x)
                if t == v:
                    return aux_a.evaluate(x)
                if t == w:
                    return 1 + aux_b.evaluate(x)
                if t == 2 * v:
                    return min({0, 1, 2} - {chi0(mirror(a, x)), band_at_two})
                if t == 2 * w:
                    return min({0, 1} - {chi0(mirror(b, x))})
                return _psi(t, v, w)

            case = "generic-v"

    return ColoringRule(
        dim=dim,
        color_count=k,
        evaluate=evaluate,
        label=f"plus2[{base.label};{case}]",
    )


def _scan_coordinate(rng: random.Random) -> Fraction:
    numerator = rng.randint(-100, 100)
    if rng.random() < 0.5:
        return Fraction(numerator)
    return Fraction(numerator, rng.randint(1, 10))


def symmetric_pair_scan(
    rule: ColoringRule,
    centers: Sequence,
    inner_radius,
    samples: int,
    seed: int,
) -> dict:
    """Sample points far from every center and hunt monochromatic
    symmetric pairs.

    Each sampled x satisfies the max-norm bound against every center;
    for each center c the mirror 2c - x sits at the same distance from
    c, so a shared color is a genuine far violation, reported verbatim.
    Half the sampled coordinates are integers so that exact level sets
    of the extension rules are exercised.
    """
    if samples < 1:
        raise ValueError("at least one sample is required")
    cpts = [
        p if isinstance(p, RationalPoint) else RationalPoint(tuple(p))
        for p in centers
    ]
    for c in cpts:
        if c.dim != rule.dim:
            raise ValueError("centers must match the rule's dimension")
    radius = (
        inner_radius
        if isinstance(inner_radius, Fraction)
        else Fraction(inner_radius)
    )
    rng = random.Random(seed)
    violations: list[dict] = []
    for _ in range(samples):
        for _attempt in range(10_000):
            x = tuple(_scan_coordinate(rng) for _ in range(rule.dim))
            if all(
                max(abs(v - c[i]) for i, v in enumerate(x)) > radius
                for c in cpts
            ):
                break
        else:
            raise ValueError("inner radius leaves no room to sample")
        color = rule.evaluate(x)
        for c in cpts:
            mirrored = tuple(2 * c[i] - v for i, v in enumerate(x))
            if rule.evaluate(mirrored) == color:
                violations.append(
                    {
                        "x": point_to_json(RationalPoint(x)),
                        "mirror": point_to_json(RationalPoint(mirrored)),
                        "color": color,
                    }
                )
    return {
        "rule": rule.label,
        "centers": [point_to_json(c) for c in cpts],
        "innerRadius": fraction_to_json(radius),
        "samples": samples,
        "violations": violations,
    }
