"""Deciding whether a finite point set is T-shaped.

The tree sets nest by the recursion T_n = (R^(n-1) x {0}) u
(T_(n-1) x R_+), and a set is T-shaped when some invertible affine map
carries it into R x T_(n-1).  For finite sets this is equivalent to a
cover by hyperplanes in general position, at most one fewer than the
ambient dimension, where each hyperplane must not separate the points
its predecessors left uncovered.  The search restricts candidates to
hyperplanes spanned by input points; that restriction is a recorded
working assumption, cross-checked against every configuration with a
known answer.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import (
    HalfspaceSide,
    Hyperplane,
    RationalPoint,
    affine_hull_dim,
    containing_hyperplane,
    hyperplane_to_json,
    in_general_position,
    matrix_rank,
    point_to_json,
    separates,
    side_of,
    spanned_hyperplanes,
)

KNOWN_T_VALUES = {1: 1, 2: 3, 3: 6, 4: 12}


def _as_point(x) -> RationalPoint:
    return x if isinstance(x, RationalPoint) else RationalPoint(tuple(x))


def is_in_Tn(x, n: int) -> bool:
    """Exact membership in the tree set T_n inside R^n.

    T_1 is the origin of the line; T_n is the union of the floor
    R^(n-1) x {0} with the product T_(n-1) x R_+ above it.
    """
    p = _as_point(x)
    if n < 1:
        raise ValueError("T_n membership needs n >= 1")
    if p.dim != n:
        raise ValueError(f"point has dimension {p.dim}, expected {n}")
    return _in_tn(p.coords, n)


def _in_tn(coords: tuple[Fraction, ...], n: int) -> bool:
    if n == 1:
        return coords[0] == 0
    last = coords[-1]
    if last == 0:
        return True
    if last > 0:
        return _in_tn(coords[:-1], n - 1)
    return False


@dataclass(frozen=True)
class TShapeCertificate:
    """A hyperplane cover witnessing T-shapedness.

    ``assignment`` sends each point to the index of the first
    hyperplane containing it.  Verification re-derives everything from
    the raw predicates: general position of the family, total coverage
    with first-index assignment, and for each hyperplane the absence of
    points strictly on both sides among those not covered earlier.
    """

    hyperplanes: tuple[Hyperplane, ...]
    assignment: dict[RationalPoint, int]

    def verify(self, points: Sequence[RationalPoint]) -> bool:
        pts = [_as_point(p) for p in points]
        hps = list(self.hyperplanes)
        if not in_general_position(hps):
            return False
        for p in pts:
            first = next(
                (
                    i
                    for i, h in enumerate(hps)
                    if side_of(h, p) is HalfspaceSide.ON
                ),
                None,
            )
            if first is None or self.assignment.get(p) != first:
                return False
        for i, h in enumerate(hps):
            residual = [p for p in pts if self.assignment[p] >= i]
            if separates(h, residual):
                return False
        return True


@dataclass(frozen=True)
class TShapeResult:
    t_shaped: bool
    certificate: TShapeCertificate | None
    detail: str


def is_t_shaped(points) -> TShapeResult:
    """Decide T-shapedness of a finite rational point set.

    Empty sets are T-shaped outright.  On the line nothing else is.  A
    set not spanning its ambient space fits on a single hyperplane and
    is T-shaped with that one-element cover.  Full-dimensional sets in
    ambient dimension d get an exhaustive search for a cover by at most
    d-1 spanned hyperplanes; every yes answer carries a certificate
    that has been re-verified before return.
    """
    pts = [_as_point(p) for p in points]
    distinct: list[RationalPoint] = []
    seen: set[RationalPoint] = set()
    for p in pts:
        if p not in seen:
            seen.add(p)
            distinct.append(p)
    if not distinct:
        return TShapeResult(
            True, TShapeCertificate((), {}), "empty set, trivially T-shaped"
        )
    dim = distinct[0].dim
    for p in distinct[1:]:
        if p.dim != dim:
            raise ValueError("points must share one ambient dimension")
    if dim == 1:
        return TShapeResult(
            False, None, "a nonempty subset of the line is never T-shaped"
        )
    if affine_hull_dim(distinct) < dim:
        h = containing_hyperplane(distinct)
        cert = TShapeCertificate((h,), {p: 0 for p in distinct})
        if not cert.verify(distinct):
            raise RuntimeError("degenerate-hull certificate failed verification")
        return TShapeResult(
            True, cert, "one hyperplane carries the whole set"
        )
    cert = _search_cover(distinct)
    if cert is None:
        return TShapeResult(
            False, None, "no certificate found under spanned-hyperplane search"
        )
    if not cert.verify(distinct):
        raise RuntimeError("search produced a certificate that fails verification")
    return TShapeResult(
        True, cert, f"covered by {len(cert.hyperplanes)} hyperplanes"
    )


def _search_cover(points: list[RationalPoint]) -> TShapeCertificate | None:
    """Exhaustive cover search over spanned hyperplanes, depth-first in
    canonical hyperplane order.

    A candidate must cover at least one still-uncovered point (a cover
    with an idle hyperplane stays valid after dropping it, so this
    loses nothing), keep the chosen normals linearly independent, and
    not separate the set of points its predecessors left uncovered.
    Dead (residual, normal-set) states are memoized; a branch is also
    cut when the residual exceeds what the remaining budget can cover.
    """
    d = points[0].dim
    budget = d - 1
    candidates: list[tuple[Hyperplane, frozenset[int]]] = []
    for h in spanned_hyperplanes(points):
        covered = frozenset(
            i for i, p in enumerate(points) if side_of(h, p) is HalfspaceSide.ON
        )
        candidates.append((h, covered))
    max_cover = max(len(c) for _, c in candidates)
    dead: set[tuple[frozenset[int], frozenset[tuple[Fraction, ...]]]] = set()

    def extend(
        residual: frozenset[int],
        chosen: list[tuple[Hyperplane, frozenset[int]]],
    ) -> list[Hyperplane] | None:
        if not residual:
            return [h for h, _ in chosen]
        remaining = budget - len(chosen)
        if remaining <= 0 or len(residual) > remaining * max_cover:
            return None
        key = (residual, frozenset(h.normal for h, _ in chosen))
        if key in dead:
            return None
        normals = [h.normal for h, _ in chosen]
        residual_pts = [points[i] for i in residual]
        for h, covered in candidates:
            if not covered & residual:
                continue
            if chosen and matrix_rank(normals + [h.normal]) != len(normals) + 1:
                continue
            if separates(h, residual_pts):
                continue
            got = extend(residual - covered, chosen + [(h, covered)])
            if got is not None:
                return got
        dead.add(key)
        return None

    hyperplanes = extend(frozenset(range(len(points))), [])
    if hyperplanes is None:
        return None
    assignment = {
        p: next(
            i
            for i, h in enumerate(hyperplanes)
            if side_of(h, p) is HalfspaceSide.ON
        )
        for p in points
    }
    return TShapeCertificate(hyperplanes=tuple(hyperplanes), assignment=assignment)


def moment_curve_points(n: int, count: int, params: Sequence) -> list[RationalPoint]:
    """Points (t, t^2, ..., t^n) for the given parameters.

    Any n+1 of them are affinely independent, so no hyperplane holds
    more than n, which makes large samples hard to cover.
    """
    if n < 1:
        raise ValueError("ambient dimension must be at least 1")
    values = [v if isinstance(v, Fraction) else Fraction(v) for v in params]
    if count != len(values):
        raise ValueError(f"count={count} but {len(values)} parameters given")
    if len(set(values)) != len(values):
        raise ValueError("parameters must be distinct")
    return [RationalPoint(tuple(t**i for i in range(1, n + 1))) for t in values]


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-100, 100), rng.randint(1, 10))


def _random_configuration(
    rng: random.Random, dim: int, size: int
) -> list[RationalPoint]:
    """Random rational points; resampled until the hull is
    full-dimensional whenever the size allows it."""
    while True:
        pts = [
            RationalPoint(tuple(_random_rational(rng) for _ in range(dim)))
            for _ in range(size)
        ]
        if size <= dim or affine_hull_dim(pts) == dim:
            return pts


def verify_t_value_bounds(n: int, trials: int, seed: int) -> dict:
    """Sampled check of both sides of the known t values.

    Random sets one below the threshold must always come back T-shaped;
    the moment-curve set of size n^2 - n + 1 must not.  Counterexamples
    are listed verbatim in the report.
    """
    if n not in KNOWN_T_VALUES:
        raise ValueError("known t values cover dimensions 1 through 4 only")
    rng = random.Random(seed)
    size = KNOWN_T_VALUES[n] - 1
    failures: list[list[list[str]]] = []
    for _ in range(trials):
        pts = _random_configuration(rng, n, size)
        if not is_t_shaped(pts).t_shaped:
            failures.append([point_to_json(p) for p in pts])
    witness_size = n * n - n + 1
    witness_params = list(range(1, witness_size + 1))
    witness = moment_curve_points(n, witness_size, witness_params)
    witness_result = is_t_shaped(witness)
    return {
        "n": n,
        "trials": trials,
        "seed": seed,
        "t_value": KNOWN_T_VALUES[n],
        "random_size": size,
        "random_failures": failures,
        "witness_size": witness_size,
        "witness_params": witness_params,
        "witness_t_shaped": witness_result.t_shaped,
        "ok": not failures and not witness_result.t_shaped,
    }


def certificate_to_json(cert: TShapeCertificate) -> dict:
    return {
        "hyperplanes": [hyperplane_to_json(h) for h in cert.hyperplanes],
        "assignment": [
            [point_to_json(p), index]
            for p, index in sorted(
                cert.assignment.items(), key=lambda kv: kv[0].coords
            )
        ],
    }
