"""Coordinates and piecewise-linear trajectories for two robots on a figure-eight track.

The track is a pair of unit-circumference circles, A and B, glued at a single
point called the center.  A position is a circle label plus an arc fraction
s in [0, 1), measured so that s = 0 is the center and s = 1/2 is the circle's
pole, the point farthest from the center.  The center belongs to both circles;
its canonical form is (A, 0).

An ordered pair of distinct positions is a configuration.  Configurations
chart onto four unit squares keyed by the circles the robots occupy: AA, BB,
AB, BA, first letter for robot 1, second for robot 2.  Square edges are glued
wherever a robot sits at the center, the same-circle squares AA and BB lose
their diagonal (collisions), and all four corners of every square (both robots
at the center) are removed.  The canonical chart form stores a center robot
with coordinate 0 in a mixed square, assigning the center robot the letter
opposite the other robot's circle.

Trajectories are piecewise linear: between consecutive waypoints each robot
stays on one circle and its arc coordinate is affine in time.  Builders split
segments wherever a robot crosses the center or a pole, so every segment lives
in a single square chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import CollisionError, ContractError, DomainError

EPS = 1e-9
SNAP_EPS = 1e-12

CIRCLES = ("A", "B")
SQUARES = ("AA", "BB", "AB", "BA")
SAME_CIRCLE_SQUARES = ("AA", "BB")
MIXED_SQUARES = ("AB", "BA")


def other_circle(circle: str) -> str:
    return "B" if circle == "A" else "A"


@dataclass(frozen=True, slots=True)
class CirclePoint:
    """A position on the track: circle label and arc fraction s in [0, 1)."""

    circle: str
    s: float

    def __post_init__(self) -> None:
        if self.circle not in CIRCLES:
            raise DomainError(f"unknown circle {self.circle!r}")
        if not (0.0 <= self.s < 1.0):
            raise DomainError(f"arc coordinate {self.s!r} outside [0, 1)")

    @property
    def is_center(self) -> bool:
        return self.s == 0.0

    @property
    def is_pole(self) -> bool:
        return self.s == 0.5


def canonicalize(p: CirclePoint) -> CirclePoint:
    """Return the canonical form of a position; the center is always (A, 0)."""
    if p.s == 0.0 and p.circle != "A":
        return CirclePoint("A", 0.0)
    return p


def circle_point(circle: str, s: float) -> CirclePoint:
    """Construct a canonical position, wrapping s = 1 back to the center."""
    if abs(s) < SNAP_EPS or abs(s - 1.0) < SNAP_EPS:
        return CirclePoint("A", 0.0)
    return CirclePoint(circle, s)


def dist_gamma(p: CirclePoint, q: CirclePoint) -> float:
    """Shortest-path distance along the track between two positions.

    On a shared circle this is ordinary circle distance; across circles every
    path runs through the center, so distances add up center-to-center.
    """
    if p.circle == q.circle:
        d = abs(p.s - q.s)
        return min(d, 1.0 - d)
    return min(p.s, 1.0 - p.s) + min(q.s, 1.0 - q.s)


def circle_points_close(p: CirclePoint, q: CirclePoint, tol: float = EPS) -> bool:
    return dist_gamma(p, q) <= tol


@dataclass(frozen=True, slots=True)
class Configuration:
    """An ordered, collision-free pair of canonical positions."""

    p1: CirclePoint
    p2: CirclePoint

    def __post_init__(self) -> None:
        for p in (self.p1, self.p2):
            if p.s == 0.0 and p.circle != "A":
                raise DomainError(f"non-canonical center position {p!r}")
        if self.p1 == self.p2:
            raise CollisionError(f"robots coincide at {self.p1!r}")

    @property
    def separation(self) -> float:
        return dist_gamma(self.p1, self.p2)


def configuration(c1: str, s1: float, c2: str, s2: float) -> Configuration:
    """Convenience constructor canonicalizing both positions."""
    return Configuration(circle_point(c1, s1), circle_point(c2, s2))


def config_dist(x: Configuration, y: Configuration) -> float:
    """Distance between configurations: the larger of the two robots' moves."""
    return max(dist_gamma(x.p1, y.p1), dist_gamma(x.p2, y.p2))


def configs_close(x: Configuration, y: Configuration, tol: float = EPS) -> bool:
    return config_dist(x, y) <= tol


@dataclass(frozen=True, slots=True)
class FlatCoord:
    """Canonical square-chart coordinates of a configuration.

    Invariants: coordinates lie in [0, 1); a zero coordinate (robot at the
    center) only appears in a mixed square; same-circle squares exclude the
    diagonal a = b; no square contains the double-center state.
    """

    square: str
    a: float
    b: float

    def __post_init__(self) -> None:
        if self.square not in SQUARES:
            raise DomainError(f"unknown square {self.square!r}")
        if not (0.0 <= self.a < 1.0 and 0.0 <= self.b < 1.0):
            raise DomainError(
                f"coordinates ({self.a!r}, {self.b!r}) outside canonical range [0, 1)"
            )
        if self.square in SAME_CIRCLE_SQUARES:
            if self.a == 0.0 or self.b == 0.0:
                raise DomainError(
                    "center states belong to mixed squares, not " + self.square
                )
            if self.a == self.b:
                raise CollisionError(f"diagonal point in square {self.square}")
        elif self.a == 0.0 and self.b == 0.0:
            raise CollisionError("both robots at the center")


def config_to_flat(c: Configuration) -> FlatCoord:
    """Chart a configuration onto its canonical square."""
    s1, s2 = c.p1.s, c.p2.s
    if s1 == 0.0:
        return FlatCoord(other_circle(c.p2.circle) + c.p2.circle, 0.0, s2)
    if s2 == 0.0:
        return FlatCoord(c.p1.circle + other_circle(c.p1.circle), s1, 0.0)
    return FlatCoord(c.p1.circle + c.p2.circle, s1, s2)


def flat_to_config(f: FlatCoord) -> Configuration:
    """Invert the chart; exact inverse of config_to_flat on canonical input."""
    p1 = circle_point(f.square[0], f.a)
    p2 = circle_point(f.square[1], f.b)
    return Configuration(p1, p2)


def canonical_flat(square: str, a: float, b: float) -> FlatCoord:
    """Build a canonical FlatCoord from raw chart values.

    Accepts coordinate values in [0, 1] (1 wraps to the center) and square
    assignments that put a center robot in a same-circle square; both are
    normalized.  Raises CollisionError for diagonal or double-center input.
    """
    if square not in SQUARES:
        raise DomainError(f"unknown square {square!r}")
    p1 = circle_point(square[0], a)
    p2 = circle_point(square[1], b)
    return config_to_flat(Configuration(p1, p2))


def parse_position(text: str) -> CirclePoint:
    """Parse a position literal of the form ``A:0.25`` or ``B:0``."""
    head, sep, tail = text.partition(":")
    if not sep or head not in CIRCLES:
        raise DomainError(f"position {text!r} does not match <A|B>:<decimal>")
    try:
        s = float(tail)
    except ValueError as exc:
        raise DomainError(f"position {text!r} has a malformed coordinate") from exc
    if not (0.0 <= s < 1.0) or not math.isfinite(s):
        raise DomainError(f"position coordinate {s!r} outside [0, 1)")
    return circle_point(head, s)


def format_position(p: CirclePoint) -> str:
    return f"{p.circle}:{p.s:.12g}"


# ---------------------------------------------------------------------------
# Piecewise-linear trajectories
# ---------------------------------------------------------------------------

_CRITICAL = (0.0, 0.5, 1.0)


@dataclass(frozen=True, slots=True)
class PathSegment:
    """One affine leg of a trajectory.

    Arc values live in [0, 1] chart form; a value of 1 is the center seen from
    the far side of a circle, so a single segment never wraps.  The open
    interior of a leg must avoid the center and the pole: crossings force a
    waypoint split.
    """

    t0: float
    t1: float
    circle1: str
    a0: float
    a1: float
    circle2: str
    b0: float
    b1: float

    def __post_init__(self) -> None:
        if not self.t1 > self.t0:
            raise ContractError("segment times must strictly increase")
        for circle, lo, hi in ((self.circle1, self.a0, self.a1), (self.circle2, self.b0, self.b1)):
            if circle not in CIRCLES:
                raise DomainError(f"unknown circle {circle!r}")
            for v in (lo, hi):
                if not (0.0 <= v <= 1.0):
                    raise DomainError(f"chart value {v!r} outside [0, 1]")
            low, high = min(lo, hi), max(lo, hi)
            for crit in _CRITICAL:
                if low < crit < high:
                    raise ContractError(
                        f"segment interior crosses arc value {crit}; split required"
                    )
        self._check_collision_free()

    def _check_collision_free(self) -> None:
        if self.circle1 != self.circle2:
            # Cross-circle collisions need both robots at the center, which the
            # no-interior-crossing rule confines to segment endpoints; endpoint
            # configurations are validated separately.
            return
        d0 = self.a0 - self.b0
        d1 = self.a1 - self.b1
        for target in (-1.0, 0.0, 1.0):
            if d0 == d1:
                continue
            u = (target - d0) / (d1 - d0)
            if SNAP_EPS < u < 1.0 - SNAP_EPS:
                raise CollisionError("trajectory segment passes through a collision")

    def interpolate(self, t: float) -> tuple[float, float]:
        u = (t - self.t0) / (self.t1 - self.t0)
        return (
            self.a0 + u * (self.a1 - self.a0),
            self.b0 + u * (self.b1 - self.b0),
        )

    @property
    def sweep(self) -> float:
        """Largest arc distance either robot travels within the segment."""
        return max(abs(self.a1 - self.a0), abs(self.b1 - self.b0))

    def start_config(self) -> Configuration:
        return configuration(self.circle1, self.a0, self.circle2, self.b0)

    def end_config(self) -> Configuration:
        return configuration(self.circle1, self.a1, self.circle2, self.b1)

    def reversed(self) -> "PathSegment":
        return PathSegment(
            1.0 - self.t1,
            1.0 - self.t0,
            self.circle1,
            self.a1,
            self.a0,
            self.circle2,
            self.b1,
            self.b0,
        )


@dataclass(frozen=True)
class PhysPath:
    """A validated piecewise-linear trajectory over t in [0, 1]."""

    segments: tuple[PathSegment, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise DomainError("a trajectory needs at least one segment")
        if self.segments[0].t0 != 0.0 or self.segments[-1].t1 != 1.0:
            raise ContractError("trajectory must span t in [0, 1]")
        prev = self.segments[0]
        prev.start_config()
        for seg in self.segments[1:]:
            if seg.t0 != prev.t1:
                raise ContractError("trajectory segments must be contiguous in t")
            if not configs_close(prev.end_config(), seg.start_config(), EPS):
                raise ContractError("trajectory waypoints disagree across a junction")
            prev = seg
        prev.end_config()

    @cached_property
    def _starts(self) -> tuple[float, ...]:
        return tuple(seg.t0 for seg in self.segments)

    @cached_property
    def waypoints(self) -> tuple[tuple[float, Configuration], ...]:
        pts = [(self.segments[0].t0, self.segments[0].start_config())]
        pts.extend((seg.t1, seg.end_config()) for seg in self.segments)
        return tuple(pts)

    @property
    def start(self) -> Configuration:
        return self.segments[0].start_config()

    @property
    def end(self) -> Configuration:
        return self.segments[-1].end_config()

    @cached_property
    def sweep(self) -> float:
        """Total arc length of the busier robot, summed over segments."""
        return sum(seg.sweep for seg in self.segments)

    def segment_at(self, t: float) -> PathSegment:
        if not (0.0 <= t <= 1.0):
            raise DomainError(f"time {t!r} outside [0, 1]")
        lo, hi = 0, len(self.segments) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._starts[mid] <= t:
                lo = mid
            else:
                hi = mid - 1
        return self.segments[lo]

    def config_at(self, t: float) -> Configuration:
        seg = self.segment_at(t)
        a, b = seg.interpolate(t)
        return configuration(seg.circle1, a, seg.circle2, b)

    def reversed(self) -> "PhysPath":
        return PhysPath(tuple(seg.reversed() for seg in reversed(self.segments)))


@dataclass(frozen=True, slots=True)
class ChartLeg:
    """Unsplit straight-line chart motion used to assemble trajectories."""

    circle1: str
    a0: float
    a1: float
    circle2: str
    b0: float
    b1: float

    @property
    def sweep(self) -> float:
        return max(abs(self.a1 - self.a0), abs(self.b1 - self.b0))


def _split_fractions(lo: float, hi: float) -> list[float]:
    cuts = []
    low, high = min(lo, hi), max(lo, hi)
    for crit in _CRITICAL:
        if low < crit < high:
            cuts.append((crit - lo) / (hi - lo))
    return cuts


def _interp(lo: float, hi: float, u: float) -> float:
    v = lo + u * (hi - lo)
    # Pin values that are meant to be exactly at a chart boundary.
    for crit in _CRITICAL:
        if abs(v - crit) < SNAP_EPS:
            return crit
    return v


def path_from_legs(legs: list[ChartLeg]) -> PhysPath:
    """Assemble a trajectory from chart legs.

    Legs are split at pole and center crossings, timed proportionally to arc
    sweep, and normalized to t in [0, 1].  Zero-sweep legs are dropped unless
    the whole input is stationary, which yields a constant trajectory.
    """
    pieces: list[tuple[ChartLeg, float]] = []
    for leg in legs:
        cuts = sorted(set(_split_fractions(leg.a0, leg.a1) + _split_fractions(leg.b0, leg.b1)))
        bounds = [0.0, *cuts, 1.0]
        for u0, u1 in zip(bounds, bounds[1:]):
            piece = ChartLeg(
                leg.circle1,
                _interp(leg.a0, leg.a1, u0),
                _interp(leg.a0, leg.a1, u1),
                leg.circle2,
                _interp(leg.b0, leg.b1, u0),
                _interp(leg.b0, leg.b1, u1),
            )
            if piece.sweep > 0.0:
                pieces.append((piece, piece.sweep))
    if not pieces:
        if not legs:
            raise DomainError("cannot build a trajectory from no legs")
        first = legs[0]
        return constant_path(configuration(first.circle1, first.a0, first.circle2, first.b0))
    total = sum(w for _, w in pieces)
    segments = []
    acc = 0.0
    for i, (piece, w) in enumerate(pieces):
        t0 = acc / total
        acc += w
        t1 = 1.0 if i == len(pieces) - 1 else acc / total
        segments.append(
            PathSegment(t0, t1, piece.circle1, piece.a0, piece.a1, piece.circle2, piece.b0, piece.b1)
        )
    return PhysPath(tuple(segments))


def constant_path(c: Configuration) -> PhysPath:
    """The trajectory that parks both robots at a configuration."""
    return PhysPath(
        (
            PathSegment(
                0.0, 1.0, c.p1.circle, c.p1.s, c.p1.s, c.p2.circle, c.p2.s, c.p2.s
            ),
        )
    )


def path_concat(front: PhysPath, back: PhysPath) -> PhysPath:
    """Concatenate two trajectories whose junction configurations agree.

    Durations are reassigned proportionally to each part's arc sweep, so a
    constant prefix or suffix costs no time.
    """
    if not configs_close(front.end, back.start, EPS):
        raise ContractError("trajectory endpoints disagree beyond tolerance")
    legs = [
        ChartLeg(seg.circle1, seg.a0, seg.a1, seg.circle2, seg.b0, seg.b1)
        for seg in front.segments + back.segments
    ]
    if all(leg.sweep == 0.0 for leg in legs):
        return constant_path(front.start)
    return path_from_legs(legs)


def path_min_separation(path: PhysPath, n: int = 64) -> float:
    """Smallest sampled distance between the robots along a trajectory.

    Samples n uniformly spaced times per segment, endpoints included.
    """
    if n < 2:
        raise DomainError("need at least 2 samples per segment")
    best = math.inf
    step = 1.0 / (n - 1)
    for seg in path.segments:
        same = seg.circle1 == seg.circle2
        da, db = seg.a1 - seg.a0, seg.b1 - seg.b0
        for k in range(n):
            u = k * step
            x = seg.a0 + u * da
            y = seg.b0 + u * db
            if same:
                d = abs(x - y)
                if d > 0.5:
                    d = 1.0 - d
            else:
                d = min(x, 1.0 - x) + min(y, 1.0 - y)
            if d < best:
                best = d
    return best


def path_sup_distance(p: PhysPath, q: PhysPath, n: int = 256) -> float:
    """Largest sampled configuration distance between two trajectories."""
    if n < 2:
        raise DomainError("need at least 2 samples")
    worst = 0.0
    step = 1.0 / (n - 1)
    for k in range(n):
        t = k * step
        d = config_dist(p.config_at(t), q.config_at(t))
        if d > worst:
            worst = d
    return worst
