"""Conceptual space: points, prototype sets and distance metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

PointLike = Union["Point", float, int, Sequence[float]]


@dataclass(frozen=True)
class Point:
    coords: tuple

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if len(coords) == 0:
            raise ValueError("a point needs at least one coordinate")
        if not all(math.isfinite(c) for c in coords):
            raise ValueError(f"point coordinates must be finite, got {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __add__(self, other: PointLike) -> "Point":
        other = as_point(other)
        _check_dims(self, other)
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: PointLike) -> "Point":
        other = as_point(other)
        _check_dims(self, other)
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords)))


def as_point(x: PointLike) -> Point:
    """Coerce a scalar, a sequence or a Point to a Point."""
    if isinstance(x, Point):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Point((float(x),))
    return Point(tuple(x))


def _check_dims(x: Point, y: Point):
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} != {y.dim}")


@dataclass(frozen=True)
class Metric:
    """Pseudo-distance on the space.

    ``kind`` is one of ``"euclidean"``, ``"weighted-euclidean"`` or
    ``"absolute-1d"``.  Only the pseudo-metric axioms are relied upon.
    """

    kind: str = "euclidean"
    weights: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("euclidean", "weighted-euclidean", "absolute-1d"):
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if self.kind == "weighted-euclidean":
            if self.weights is None:
                raise ValueError("weighted-euclidean metric needs weights")
            w = tuple(float(v) for v in self.weights)
            if any(v < 0 or not math.isfinite(v) for v in w):
                raise ValueError("metric weights must be finite and nonnegative")
            object.__setattr__(self, "weights", w)
        elif self.weights is not None:
            raise ValueError(f"{self.kind} metric takes no weights")

    def __call__(self, x: PointLike, y: PointLike) -> float:
        return distance(self, x, y)


EUCLIDEAN = Metric("euclidean")


def distance(m: Metric, x: PointLike, y: PointLike) -> float:
    x, y = as_point(x), as_point(y)
    _check_dims(x, y)
    if m.kind == "absolute-1d":
        if x.dim != 1:
            raise ValueError("absolute-1d metric only applies to 1-D points")
        return abs(x.coords[0] - y.coords[0])
    diff = [a - b for a, b in zip(x.coords, y.coords)]
    if m.kind == "euclidean":
        return math.hypot(*diff)
    if len(m.weights) != x.dim:
        raise ValueError(f"metric has {len(m.weights)} weights for {x.dim}-D points")
    return math.sqrt(sum(w * d * d for w, d in zip(m.weights, diff)))


@dataclass(frozen=True)
class PrototypeSet:
    """Finite set of points, plus (1-D only) closed intervals.

    The distance from x to the set is the minimum over its members, so a
    union of point sets and intervals is represented directly.  Interval
    ends may be infinite to express one-sided plateaus.
    """

    points: tuple = ()
    intervals: tuple = field(default=())

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        ivs = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        if not pts and not ivs:
            raise ValueError("prototype set is empty")
        for lo, hi in ivs:
            if math.isnan(lo) or math.isnan(hi) or lo > hi:
                raise ValueError(f"bad prototype interval [{lo}, {hi}]")
        dims = {p.dim for p in pts}
        if ivs:
            dims.add(1)
        if len(dims) > 1:
            raise ValueError("prototype members have mixed dimensions")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def of(cls, *points: PointLike) -> "PrototypeSet":
        return cls(points=tuple(as_point(p) for p in points))

    @classmethod
    def interval(cls, lo: float, hi: float) -> "PrototypeSet":
        return cls(intervals=((lo, hi),))

    @property
    def dim(self) -> int:
        return self.points[0].dim if self.points else 1

    def union(self, other: "PrototypeSet") -> "PrototypeSet":
        return PrototypeSet(self.points + other.points, self.intervals + other.intervals)

    def translate(self, a: PointLike) -> "PrototypeSet":
        a = as_point(a)
        if a.dim != self.dim:
            raise ValueError(f"dimension mismatch: shift is {a.dim}-D, prototype {self.dim}-D")
        s = a.coords[0]
        return PrototypeSet(
            tuple(p + a for p in self.points),
            tuple((lo + s, hi + s) for lo, hi in self.intervals),
        )

    def contains(self, x: PointLike) -> bool:
        x = as_point(x)
        if any(p == x for p in self.points):
            return True
        return x.dim == 1 and any(lo <= x.coords[0] <= hi for lo, hi in self.intervals)


def as_prototype(p) -> PrototypeSet:
    if isinstance(p, PrototypeSet):
        return p
    return PrototypeSet.of(p)


def set_distance(m: Metric, x: PointLike, P: PrototypeSet) -> float:
    """min over y in P of d(x, y); 0 inside an interval member."""
    x = as_point(x)
    if x.dim != P.dim:
        raise ValueError(f"dimension mismatch: point is {x.dim}-D, prototype {P.dim}-D")
    best = math.inf
    for p in P.points:
        best = min(best, distance(m, x, p))
    for lo, hi in P.intervals:
        # nearest point of the interval; metric is monotone in |x - y| in 1-D
        nearest = min(max(x.coords[0], lo), hi)
        best = min(best, distance(m, x, Point((nearest,))))
    return best


def set_distances(m: Metric, xs: Iterable[PointLike], P: PrototypeSet) -> np.ndarray:
    return np.array([set_distance(m, x, P) for x in xs], dtype=float)
