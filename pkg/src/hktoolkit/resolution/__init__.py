"""Resolution of marked ideals: charts, transforms, the driver and an
independent verifier."""

from .core import (
    Divisor,
    MarkedIdeal,
    blow_up,
    center_in_cosupport,
    coefficient_capacitor,
    companion_ideal,
    controlled_transform,
    cosupport,
    cosupport_empty,
    in_cosupport,
    monomial_center,
    strict_transform,
    tangent_direction,
)
from .driver import ResolutionTrace, resolve_marked
from .verify import verify_resolution
from ..ideals import derivative_ideal
