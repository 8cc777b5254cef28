"""Core stroke geometry: points, strokes, bounding boxes, resampling,
normalization transforms, and Hausdorff distance.

Everything here is a pure function on immutable values. Coordinates are
pixels with y increasing downward, matching canvas capture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DegenerateStroke, EmptySet

EPS = 1e-6


@dataclass(frozen=True)
class Point:
    x: float
    y: float
    t: Optional[float] = None

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class BoundingBox:
    min_x: float
    min_y: float
    max_x: float
    max_y: float

    @property
    def width(self) -> float:
        return self.max_x - self.min_x

    @property
    def height(self) -> float:
        return self.max_y - self.min_y

    @property
    def center(self) -> tuple[float, float]:
        return (self.min_x + self.max_x) / 2.0, (self.min_y + self.max_y) / 2.0

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    def contains(self, x: float, y: float, slack: float = 0.0) -> bool:
        return (self.min_x - slack <= x <= self.max_x + slack
                and self.min_y - slack <= y <= self.max_y + slack)

    def union(self, other: "BoundingBox") -> "BoundingBox":
        return BoundingBox(min(self.min_x, other.min_x),
                           min(self.min_y, other.min_y),
                           max(self.max_x, other.max_x),
                           max(self.max_y, other.max_y))


@dataclass(frozen=True)
class Stroke:
    """Ordered point sequence as captured from a pointing device."""

    points: tuple[Point, ...]
    id: int = 0

    def __post_init__(self):
        if not self.points:
            raise DegenerateStroke("stroke must contain at least one point")
        for p in self.points:
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise DegenerateStroke("stroke coordinates must be finite")

    @staticmethod
    def captured(points: Iterable[Point], id: int = 0) -> "Stroke":
        """Build a stroke from raw capture data.

        Consecutive duplicate points are dropped at ingestion so arc-length
        arithmetic never divides by zero.
        """
        deduped: list[Point] = []
        for p in points:
            if deduped:
                q = deduped[-1]
                if p.x == q.x and p.y == q.y:
                    continue
            deduped.append(p)
        return Stroke(tuple(deduped), id=id)

    @staticmethod
    def from_xy(xy: Iterable[tuple[float, float]], id: int = 0) -> "Stroke":
        return Stroke.captured((Point(float(x), float(y)) for x, y in xy), id=id)

    def xy(self) -> np.ndarray:
        return np.array([(p.x, p.y) for p in self.points], dtype=float)

    def bbox(self) -> BoundingBox:
        xs = [p.x for p in self.points]
        ys = [p.y for p in self.points]
        return BoundingBox(min(xs), min(ys), max(xs), max(ys))

    @property
    def start(self) -> Point:
        return self.points[0]

    @property
    def end(self) -> Point:
        return self.points[-1]


def bbox_of_strokes(strokes: Sequence[Stroke]) -> BoundingBox:
    box = strokes[0].bbox()
    for s in strokes[1:]:
        box = box.union(s.bbox())
    return box


def path_length(s: Stroke) -> float:
    """Total polyline arc length; 0 for a single point."""
    pts = s.points
    return sum(pts[i].dist(pts[i + 1]) for i in range(len(pts) - 1))


def resample(s: Stroke, n: int) -> Stroke:
    """Resample to exactly `n` points at equal arc-length intervals.

    Endpoints are preserved exactly.
    """
    if n < 2:
        raise ValueError("resample needs n >= 2")
    total = path_length(s)
    if total <= 0.0:
        raise DegenerateStroke("cannot resample a zero-length stroke")
    xy = s.xy()
    seg = np.linalg.norm(np.diff(xy, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, cum[-1], n)
    xs = np.interp(targets, cum, xy[:, 0])
    ys = np.interp(targets, cum, xy[:, 1])
    out = [Point(float(x), float(y)) for x, y in zip(xs, ys)]
    # pin endpoints exactly against interpolation rounding
    out[0] = Point(s.start.x, s.start.y)
    out[-1] = Point(s.end.x, s.end.y)
    return Stroke(tuple(out), id=s.id)


def scale_to(s: Stroke, size: float) -> Stroke:
    """Proportionally scale so the larger bbox dimension becomes `size`.

    A degenerate dimension (zero width or height) stays zero; the other
    dimension carries the scale factor.
    """
    box = s.bbox()
    big = max(box.width, box.height)
    if big <= 0.0:
        raise DegenerateStroke("cannot scale a zero-size stroke")
    f = size / big
    return Stroke(tuple(Point(p.x * f, p.y * f, p.t) for p in s.points), id=s.id)


def translate_to_origin(s: Stroke) -> Stroke:
    """Translate so the point centroid sits at (0, 0)."""
    cx = sum(p.x for p in s.points) / len(s.points)
    cy = sum(p.y for p in s.points) / len(s.points)
    return Stroke(tuple(Point(p.x - cx, p.y - cy, p.t) for p in s.points), id=s.id)


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two point sets (N×2 arrays)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise EmptySet("hausdorff needs nonempty point sets")
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def straightness(s: Stroke) -> float:
    """Endpoint distance over path length, in [0, 1]; 1 for a perfect line."""
    total = path_length(s)
    if total <= 0.0:
        return 0.0
    return min(1.0, s.start.dist(s.end) / total)


def endpoint_slope_ratio(s: Stroke) -> float:
    """|dy/dx| of the endpoint chord; inf for a vertical chord."""
    dx = s.end.x - s.start.x
    dy = s.end.y - s.start.y
    if dx == 0.0:
        return math.inf
    return abs(dy / dx)


def endpoint_inverse_slope_ratio(s: Stroke) -> float:
    """|dx/dy| of the endpoint chord; inf for a horizontal chord."""
    dx = s.end.x - s.start.x
    dy = s.end.y - s.start.y
    if dy == 0.0:
        return math.inf
    return abs(dx / dy)
