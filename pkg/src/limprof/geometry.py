"""Exact plane geometry for value-pair configurations.

A two-sequence combination a*x + b*y takes the value a*xi + b*eta on a
refined atom whose x-part has value xi and y-part has value eta. Counting
its accumulation points is therefore counting parallel lines: the functional
(a, b) groups the points (xi, eta) into level sets, one per line with normal
(a, b). Directions determined by at least two of the points are exactly the
candidates that can lower the count below the number of points.

``pinchasi_search`` scans all point-pair directions and returns one whose
parallel-line class count is maximal; for a non-collinear m-point set that
count always lies in [floor((m+1)/2), m-1] (the lower bound is a published
result on directions determined by point sets; the upper bound holds because
the two determining points share a line).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CollinearError, ShapeError
from .kernel import normalize_primitive, rat, vec
from .sequences import InfinitudeRelation, StepSequence

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Direction:
    """Primitive integer direction with canonical sign: a > 0, or a == 0 and b > 0."""

    a: int
    b: int

    @classmethod
    def of(cls, dx, dy) -> "Direction":
        n = normalize_primitive((rat(dx), rat(dy)))
        return cls(int(n[0]), int(n[1]))

    @property
    def normal(self) -> tuple[Fraction, Fraction]:
        """Functional constant exactly on lines parallel to this direction."""
        return (Fraction(self.b), Fraction(-self.a))

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)


@dataclass(frozen=True)
class PointConfig:
    points: tuple[Point, ...]

    def __post_init__(self):
        if not self.points:
            raise ShapeError("need at least one point")
        if len(set(self.points)) != len(self.points):
            raise ShapeError("points must be pairwise distinct")

    @classmethod
    def of(cls, pts: Sequence[Sequence]) -> "PointConfig":
        return cls(tuple((rat(p[0]), rat(p[1])) for p in pts))

    def __len__(self) -> int:
        return len(self.points)


def collinear(config: PointConfig) -> bool:
    """Exact test; configurations of one or two points count as collinear."""
    pts = config.points
    if len(pts) <= 2:
        return True
    ox, oy = pts[0]
    dx, dy = None, None
    for x, y in pts[1:]:
        if dx is None:
            dx, dy = x - ox, y - oy
            continue
        if dx * (y - oy) - dy * (x - ox) != 0:
            return False
    return True


def direction_classes(config: PointConfig, direction: Direction) -> int:
    """Number of lines parallel to ``direction`` needed to cover the points."""
    b, na = direction.normal
    return len({b * x + na * y for x, y in config.points})


def pair_directions(config: PointConfig) -> list[Direction]:
    """All directions determined by two distinct points, sorted canonically."""
    dirs = set()
    pts = config.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dirs.add(Direction.of(pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]))
    return sorted(dirs, key=Direction.key)


def pinchasi_search(config: PointConfig) -> tuple[Direction, int]:
    """Direction determined by the points with the maximal parallel-line
    class count; ties broken by canonical direction order.

    Raises CollinearError when the configuration is collinear (then a single
    line covers everything and no bound below m-1 exists)."""
    if collinear(config):
        raise CollinearError("point configuration is collinear")
    best: tuple[Direction, int] | None = None
    for d in pair_directions(config):
        c = direction_classes(config, d)
        if best is None or c > best[1]:
            best = (d, c)
    assert best is not None
    m = len(config)
    assert (m + 1) // 2 <= best[1] <= m - 1
    return best


@dataclass(frozen=True)
class EscapeWitness:
    """Coefficients (alpha, beta) whose combination realizes a class count
    outside the forbidden set, plus the data needed to re-check it."""

    alpha: Fraction
    beta: Fraction
    class_count: int
    forbidden: tuple[int, ...]
    points: tuple[Point, ...]


def escape(
    x: StepSequence,
    y: StepSequence,
    rel: InfinitudeRelation,
    forbidden,
) -> EscapeWitness | None:
    """Find (alpha, beta) with the accumulation-point count of
    alpha*x + beta*y outside ``forbidden``; None means not found.

    The value pairs over the declared-infinite atom pairs form a plane point
    set. Collinear along a line with normal (alpha, beta): that combination
    converges (count 1). Otherwise the maximal-count direction search gives a
    count in [floor(|P|+1)/2, |P|-1], which escapes whenever the forbidden
    set is sparse enough (k larger than twice the forbidden values)."""
    if rel.left.ids != x.partition.ids or rel.right.ids != y.partition.ids:
        raise ShapeError("relation does not match the sequences")
    forb = tuple(sorted(set(int(f) for f in forbidden)))
    pts = tuple(
        (x.values[i], y.values[j]) for i, j in sorted(rel.pairs)
    )
    config = PointConfig(pts)
    if collinear(config):
        base = pts[0]
        direction = None
        for p in pts[1:]:
            if p != base:
                direction = (p[0] - base[0], p[1] - base[1])
                break
        if direction is None:
            a, b = Fraction(1), Fraction(0)  # single value pair: x alone converges
        else:
            a, b = normalize_primitive((-direction[1], direction[0]))
        count = len({a * px + b * py for px, py in pts})
        assert count == 1
        if 1 in forb:
            return None
        return EscapeWitness(a, b, 1, forb, pts)
    d, count = pinchasi_search(config)
    if count in forb:
        return None
    a, b = normalize_primitive(d.normal)
    return EscapeWitness(a, b, count, forb, pts)


def approx_regular_polygon(n: int, tol: float = 1e-9) -> tuple[tuple[float, float], ...]:
    """Float vertices of a regular 2n-gon, rotated so abscissas are pairwise
    distinct (checked against the tolerance); rotation search is deterministic."""
    m = 2 * n
    rot = 0.1
    golden = (math.sqrt(5) - 1) / 2
    for _ in range(1000):
        pts = tuple(
            (math.cos(2 * math.pi * k / m + rot), math.sin(2 * math.pi * k / m + rot))
            for k in range(m)
        )
        xs = sorted(p[0] for p in pts)
        if all(b - a > 10 * tol for a, b in zip(xs, xs[1:])):
            return pts
        rot += golden
    raise RuntimeError("could not find a rotation with distinct abscissas")


def approx_direction_census(
    points: Sequence[tuple[float, float]], tol: float = 1e-9
) -> tuple[int, ...]:
    """Achieved parallel-line class counts of a float point set.

    Every pair direction is censused with unit-normal functionals (value
    coincidence decided at ``tol``); the generic count len(points) is then
    verified with explicit directions rather than assumed."""
    pts = list(points)
    m = len(pts)
    counts = set()
    for i in range(m):
        for j in range(i + 1, m):
            dx, dy = pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]
            norm = math.hypot(dx, dy)
            ux, uy = -dy / norm, dx / norm
            counts.add(_tol_count([ux * x + uy * y for x, y in pts], tol))
    phi = 0.123
    golden = (math.sqrt(5) - 1) / 2
    for _ in range(1000):
        ux, uy = math.cos(phi), math.sin(phi)
        if _tol_count([ux * x + uy * y for x, y in pts], tol) == m:
            counts.add(m)
            break
        phi += golden
    else:
        raise RuntimeError("no generic direction found (degenerate point set)")
    return tuple(sorted(counts))


def _tol_count(values: list[float], tol: float) -> int:
    values = sorted(values)
    groups = 1
    for a, b in zip(values, values[1:]):
        if b - a > tol:
            groups += 1
    return groups
