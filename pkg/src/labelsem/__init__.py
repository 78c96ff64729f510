"""Label-semantics concepts and the hedges 'quite' and 'very'."""

from .hedge import (
    HedgedLabel,
    HedgeSpec,
    MonotoneFn,
    affine,
    apply,
    apply_chain,
    compose_n,
    concentrate_mu,
    dilate_mu,
    iterate_to_limit,
    limit_profile,
    linear_scale,
    quite,
    rescale,
    rescale_n,
    very,
)
from .label import Label, combine_independent
from .space import Metric, Point, PrototypeSet
from .threshold import CustomDensity, PiecewiseLinear, Uniform

__version__ = "0.1.0"
