"""Labels: a prototype, a metric and a random threshold."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .space import EUCLIDEAN, Metric, PointLike, PrototypeSet, as_prototype, set_distance
from .threshold import ThresholdDist


@dataclass(frozen=True)
class Label:
    """mu(x) = P(threshold >= d(x, prototype))."""

    prototype: PrototypeSet
    threshold: ThresholdDist
    metric: Metric = field(default=EUCLIDEAN)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "prototype", as_prototype(self.prototype))

    @property
    def dim(self) -> int:
        return self.prototype.dim

    def distance(self, x: PointLike) -> float:
        return set_distance(self.metric, x, self.prototype)

    def survival(self, d: float) -> float:
        return self.threshold.survival(d)

    def appropriateness(self, x: PointLike) -> float:
        return self.threshold.survival(self.distance(x))

    __call__ = appropriateness

    def neighborhood_contains(self, eps: float, x: PointLike) -> bool:
        if eps < 0:
            raise ValueError("neighbourhood radius must be nonnegative")
        return self.distance(x) <= eps

    def shifted(self, a: PointLike) -> "Label":
        return Label(self.prototype.translate(a), self.threshold, self.metric, self.name)


def appropriateness(L, x: PointLike) -> float:
    return L.appropriateness(x)


def neighborhood_contains(L: Label, eps: float, x: PointLike) -> bool:
    return L.neighborhood_contains(eps, x)


def combine_independent(labels: Sequence, x_parts: Sequence[PointLike]) -> float:
    """Appropriateness of a conjunction of labels on independent dimensions.

    ``labels`` may mix plain and hedged labels; x_parts[i] is the
    coordinate block that labels[i] is evaluated on.
    """
    if len(labels) != len(x_parts):
        raise ValueError(f"{len(labels)} labels but {len(x_parts)} coordinate blocks")
    mu = 1.0
    for L, x in zip(labels, x_parts):
        mu *= L.appropriateness(x)
    return mu
