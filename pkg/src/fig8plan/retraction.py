"""Deformation retraction of the configuration space onto its spine.

Every off-spine point flows along a straight chart ray to the spine, scaling
its offset vector from a reference corner of its square.  In a mixed square
the reference corner is the nearest corner; the ray pushes the larger offset
coordinate out to the 1/2 cross line.  In a same-circle square the reference
corner is the puncture the diagonal does not touch, (0, 1) above the diagonal
and (1, 0) below it; scaling from that corner moves a point onto the
sub-diagonal |b - a| = 1/2 without ever crossing the diagonal, and the family
stays continuous across all square gluings.

The scale factor lambda multiplying the offset vector equals 1 exactly on the
spine.  It grows without bound near the removed corner states, so inputs
within SINGULAR_EPS of a corner (mixed) or of the diagonal or puncture corner
(same-circle) are rejected rather than mapped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SingularityError
from .geometry import (
    SAME_CIRCLE_SQUARES,
    ChartLeg,
    Configuration,
    FlatCoord,
    PhysPath,
    SNAP_EPS,
    canonical_flat,
    config_to_flat,
    flat_to_config,
    path_from_legs,
)
from .spine import ChainPoint, flat_to_chain

SINGULAR_EPS = 1e-12


def region_corner(f: FlatCoord) -> tuple[int, int]:
    """Reference corner a flat point retracts away from."""
    if f.square in SAME_CIRCLE_SQUARES:
        return (0, 1) if f.b > f.a else (1, 0)
    return (0 if f.a <= 0.5 else 1, 0 if f.b <= 0.5 else 1)


def retract_flat(f: FlatCoord) -> tuple[FlatCoord, float]:
    """Project a flat point onto the spine along its corner ray.

    Returns the image and the ray scale lambda; lambda == 1 exactly when the
    input already lies on the spine.
    """
    ca, cb = region_corner(f)
    ua, ub = f.a - ca, f.b - cb
    if f.square in SAME_CIRCLE_SQUARES:
        sigma = abs(f.b - f.a)
        if sigma <= SINGULAR_EPS:
            raise SingularityError(f"{f} is within {SINGULAR_EPS} of the diagonal")
        if 1.0 - sigma <= SINGULAR_EPS:
            raise SingularityError(f"{f} is within {SINGULAR_EPS} of a corner state")
        scale = 1.0 / (2.0 * (1.0 - sigma))
        a_out = ca + scale * ua
        b_out = a_out + 0.5 if (ca, cb) == (0, 1) else a_out - 0.5
    else:
        m = max(abs(ua), abs(ub))
        if m <= SINGULAR_EPS:
            raise SingularityError(f"{f} is within {SINGULAR_EPS} of a corner state")
        scale = 0.5 / m
        if abs(ua) >= abs(ub):
            a_out = 0.5
            b_out = cb + scale * ub
            if abs(ub) == m:
                b_out = 0.5
        else:
            a_out = ca + scale * ua
            b_out = 0.5
    image = canonical_flat(f.square, _clip(a_out), _clip(b_out))
    return image, scale


def _clip(x: float) -> float:
    if -SNAP_EPS < x < 0.0:
        return 0.0
    if 1.0 < x < 1.0 + SNAP_EPS:
        return 1.0
    return x


@dataclass(frozen=True, slots=True)
class RetractResult:
    """Where a configuration lands on the spine and how it got there."""

    point: ChainPoint
    flat: FlatCoord
    scale: float
    trace: PhysPath


def retract(c: Configuration) -> RetractResult:
    """Retract a configuration onto the spine with its straight-line trace.

    The trace runs from the input to the image inside one square chart; it is
    collision free because the corner ray never meets the diagonal.
    """
    f = config_to_flat(c)
    image, scale = retract_flat(f)
    leg = ChartLeg(f.square[0], f.a, image.a, f.square[1], f.b, image.b)
    trace = path_from_legs([leg])
    return RetractResult(
        point=flat_to_chain(image),
        flat=image,
        scale=scale,
        trace=trace,
    )


def spine_image(c: Configuration) -> ChainPoint:
    return retract(c).point


def is_on_spine(c: Configuration) -> bool:
    try:
        result = retract_flat(config_to_flat(c))
    except SingularityError:
        return False
    return result[1] == 1.0


def spine_config(c: Configuration) -> Configuration:
    return flat_to_config(retract(c).flat)
