"""JSON forms of labels, hedges and threshold functions.

Label::

    {"name": "tall", "prototype": {"interval": [6.5, 6.5]} | {"points": [[5.0]]},
     "metric": "euclidean", "threshold": {"dist": "uniform", "lo": 0, "hi": 3}}

Hedge: a name (``"quite"``, ``"very"``, ``"extremely"``, ``"dilate"``,
``"concentrate"``) or an object::

    {"hedge": "very" | "quite" | "rescale", "k": 2.0,
     "prototype": {...}, "f": {"kind": "linear", "k": 2.0}}

A chain is a JSON array of hedges.
"""

from __future__ import annotations

import json

from .classical import power_as_threshold_fn
from .hedge import HedgeSpec, MonotoneFn, affine, linear_scale, quite, rescale, very
from .label import Label
from .space import Metric, PrototypeSet
from .threshold import from_json as threshold_from_json


class SpecError(ValueError):
    """Malformed JSON specification."""


# alias -> expansion; extend to add named hedges
ALIASES = {
    "quite": ["dilate"],
    "very": ["concentrate"],
    "extremely": ["concentrate", "concentrate"],
}


def prototype_from_json(obj) -> PrototypeSet:
    if isinstance(obj, (int, float)):
        return PrototypeSet.of(float(obj))
    if not isinstance(obj, dict):
        raise SpecError(f"prototype must be an object, got {obj!r}")
    points = [tuple(p) if isinstance(p, (list, tuple)) else (p,) for p in obj.get("points", [])]
    intervals = obj.get("intervals", [])
    if "interval" in obj:
        intervals = [obj["interval"]] + list(intervals)
    for iv in intervals:
        if len(iv) != 2:
            raise SpecError(f"interval needs two ends, got {iv!r}")
    return PrototypeSet(tuple(points), tuple(tuple(iv) for iv in intervals))


def prototype_to_json(P: PrototypeSet) -> dict:
    out = {}
    if P.points:
        out["points"] = [list(p.coords) for p in P.points]
    if len(P.intervals) == 1:
        out["interval"] = list(P.intervals[0])
    elif P.intervals:
        out["intervals"] = [list(iv) for iv in P.intervals]
    return out


def metric_from_json(obj) -> Metric:
    if obj is None:
        return Metric()
    if isinstance(obj, str):
        return Metric("absolute-1d" if obj == "absolute" else obj)
    return Metric(obj.get("kind", "euclidean"), obj.get("weights"))


def label_from_json(obj) -> Label:
    try:
        return Label(
            prototype_from_json(obj["prototype"]),
            threshold_from_json(obj["threshold"]),
            metric_from_json(obj.get("metric")),
            obj.get("name", ""),
        )
    except SpecError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad label spec: {exc}") from exc


def label_to_json(L: Label) -> dict:
    m = L.metric
    metric = m.kind if m.weights is None else {"kind": m.kind, "weights": list(m.weights)}
    return {
        "name": L.name,
        "prototype": prototype_to_json(L.prototype),
        "metric": metric,
        "threshold": L.threshold.to_json(),
    }


def fn_from_json(obj) -> MonotoneFn:
    kind = obj.get("kind", "linear")
    if kind == "linear":
        return linear_scale(obj["k"])
    if kind == "affine":
        return affine(obj["k"], obj.get("b", 0.0))
    if kind == "power":
        return power_as_threshold_fn(obj["b"], obj["k"])
    raise SpecError(f"unknown threshold function kind {kind!r}")


def hedges_from_json(obj) -> list:
    """Parse one hedge, an alias, or an array of them into a list of HedgeSpec."""
    if isinstance(obj, list):
        out = []
        for item in obj:
            out.extend(hedges_from_json(item))
        return out
    if isinstance(obj, str):
        obj = {"hedge": obj}
    if not isinstance(obj, dict) or "hedge" not in obj:
        raise SpecError(f"hedge must be a name or an object with a 'hedge' key, got {obj!r}")
    try:
        name = obj["hedge"]
        proto = prototype_from_json(obj["prototype"]) if "prototype" in obj else None
        f = fn_from_json(obj["f"]) if "f" in obj else None
        if name == "rescale":
            if f is None:
                if "k" not in obj:
                    raise SpecError("rescale hedge needs 'k' or 'f'")
                f = linear_scale(obj["k"])
            return [rescale(f, proto)]
        if name not in ALIASES:
            name = {"dilate": "quite", "concentrate": "very"}.get(name, name)
        if name not in ALIASES:
            raise SpecError(f"unknown hedge {name!r}")
        make = {"dilate": quite, "concentrate": very}
        kinds = ALIASES[name]
        # an override or f attaches to the last hedge of an alias expansion
        specs = [make[k]() for k in kinds[:-1]]
        specs.append(make[kinds[-1]](prototype=proto, f=f))
        return specs
    except SpecError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad hedge spec {obj!r}: {exc}") from exc


def hedge_to_json(h: HedgeSpec) -> dict:
    name = {"dilate": "quite", "dilate_f": "quite", "concentrate": "very", "concentrate_f": "very"}.get(h.kind, h.kind)
    out = {"hedge": name}
    if h.f is not None:
        out["f"] = h.f.to_json()
    if h.prototype is not None:
        out["prototype"] = prototype_to_json(h.prototype)
    return out


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from exc
