"""The spine of the configuration space: a metric graph of six circles.

Inside each mixed square the spine is the pair of cross lines a = 1/2 and
b = 1/2; inside each same-circle square it is the pair of sub-diagonals
|b - a| = 1/2.  Each of those six lines closes up into a circle of
circumference 1 under the square gluings, and the circles meet in six
4-valent vertices, two arcs of length 1/2 per circle:

    circle  lives in  vertex at theta=0   vertex at theta=1/2
    R       AA        HA                  VA
    Bc      BB        HB                  VB
    H1      AB        HB                  C1
    V1      AB        VA                  C1
    H2      BA        HA                  C2
    V2      BA        VB                  C2

Vertices are the configurations where each robot sits at the center or a
pole: HA/HB put robot 1 at the center with robot 2 at a pole, VA/VB swap the
roles, C1/C2 put both robots at opposite poles.  Every point gets a single
canonical representation; a vertex is stored on its designated circle, the
circle a positive traversal leaves it along.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache

from .errors import ContractError, DomainError
from .geometry import (
    EPS,
    ChartLeg,
    Configuration,
    FlatCoord,
    MIXED_SQUARES,
    canonical_flat,
    config_to_flat,
    configuration,
    flat_to_config,
)

CHAIN_VERTICES = ("HA", "VA", "C1", "HB", "VB", "C2")
CHAIN_CIRCLES = ("R", "Bc", "H1", "V1", "H2", "V2")

# Square each circle's chart lives in, and which cross line it follows.
CIRCLE_SQUARE = {"R": "AA", "Bc": "BB", "H1": "AB", "V1": "AB", "H2": "BA", "V2": "BA"}

# (vertex at theta = 0, vertex at theta = 1/2) for each circle.
CIRCLE_VERTICES = {
    "R": ("HA", "VA"),
    "Bc": ("HB", "VB"),
    "H1": ("HB", "C1"),
    "V1": ("VA", "C1"),
    "H2": ("HA", "C2"),
    "V2": ("VB", "C2"),
}

# Canonical storage of each vertex: on its designated circle (see SUCCESSOR).
VERTEX_CANONICAL = {
    "HA": ("R", 0.0),
    "VA": ("V1", 0.0),
    "HB": ("Bc", 0.0),
    "VB": ("V2", 0.0),
    "C1": ("H1", 0.5),
    "C2": ("H2", 0.5),
}

# Positive traversal: leaving a vertex along its designated circle with theta
# increasing reaches the named next vertex after half a turn.  Six applications
# visit every vertex and designate every circle exactly once.
SUCCESSOR = {
    "C1": ("H1", "HB"),
    "HB": ("Bc", "VB"),
    "VB": ("V2", "C2"),
    "C2": ("H2", "HA"),
    "HA": ("R", "VA"),
    "VA": ("V1", "C1"),
}

# Collapsing each circle's two arcs to an edge leaves a 6-cycle on the
# vertices; distances below come from ring positions on that cycle.
_RING = ("HA", "VA", "C1", "HB", "VB", "C2")
_RING_INDEX = {v: i for i, v in enumerate(_RING)}


def vertex_dist(u: str, v: str) -> float:
    k = abs(_RING_INDEX[u] - _RING_INDEX[v])
    return 0.5 * min(k, 6 - k)


@dataclass(frozen=True, slots=True)
class ChainPoint:
    """A point of the spine: circle name plus angle theta in [0, 1)."""

    circle: str
    theta: float

    def __post_init__(self) -> None:
        if self.circle not in CHAIN_CIRCLES:
            raise DomainError(f"unknown spine circle {self.circle!r}")
        if not (0.0 <= self.theta < 1.0):
            raise DomainError(f"angle {self.theta!r} outside [0, 1)")

    @property
    def vertex(self) -> str | None:
        if self.theta == 0.0:
            return CIRCLE_VERTICES[self.circle][0]
        if self.theta == 0.5:
            return CIRCLE_VERTICES[self.circle][1]
        return None

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None


def chain_point(circle: str, theta: float) -> ChainPoint:
    """Construct a canonical spine point, snapping near-vertex angles.

    Angles within EPS of a multiple of 1/2 are treated as the vertex itself,
    and vertices are rewritten onto their designated circle.
    """
    if circle not in CHAIN_CIRCLES:
        raise DomainError(f"unknown spine circle {circle!r}")
    t = theta % 1.0
    if t < EPS or t > 1.0 - EPS:
        t = 0.0
    elif abs(t - 0.5) < EPS:
        t = 0.5
    if t == 0.0:
        return ChainPoint(*VERTEX_CANONICAL[CIRCLE_VERTICES[circle][0]])
    if t == 0.5:
        return ChainPoint(*VERTEX_CANONICAL[CIRCLE_VERTICES[circle][1]])
    return ChainPoint(circle, t)


def vertex_point(vertex: str) -> ChainPoint:
    if vertex not in CHAIN_VERTICES:
        raise DomainError(f"unknown spine vertex {vertex!r}")
    return ChainPoint(*VERTEX_CANONICAL[vertex])


def vertex_theta_on(circle: str, vertex: str) -> float:
    """Angle of a vertex on a circle it belongs to."""
    pair = CIRCLE_VERTICES[circle]
    if vertex == pair[0]:
        return 0.0
    if vertex == pair[1]:
        return 0.5
    raise DomainError(f"vertex {vertex} does not lie on circle {circle}")


def positive_successor(vertex: str) -> tuple[str, str]:
    """(designated circle, next vertex) for a positive half-turn."""
    return SUCCESSOR[vertex]


def current_circle(p: ChainPoint) -> str:
    """Circle a traversal leaves p along; for canonical points, the stored one."""
    return p.circle


# ---------------------------------------------------------------------------
# Charts between the spine and the flat squares
# ---------------------------------------------------------------------------


def chart_coords(circle: str, theta: float, branch_hint: float | None = None) -> tuple[str, float, float]:
    """Raw square-chart coordinates of a spine angle, theta in [0, 1].

    The sub-diagonal circles R and Bc switch chart branch at theta = 1/2; a
    branch_hint angle (typically an arc midpoint) disambiguates the endpoints.
    """
    if not (0.0 <= theta <= 1.0):
        raise DomainError(f"chart angle {theta!r} outside [0, 1]")
    if circle == "H1":
        return ("AB", theta, 0.5)
    if circle == "H2":
        return ("BA", theta, 0.5)
    if circle == "V1":
        return ("AB", 0.5, theta)
    if circle == "V2":
        return ("BA", 0.5, theta)
    if circle in ("R", "Bc"):
        square = CIRCLE_SQUARE[circle]
        pivot = theta if branch_hint is None else branch_hint
        if pivot <= 0.5:
            return (square, theta, theta + 0.5)
        return (square, theta, theta - 0.5)
    raise DomainError(f"unknown spine circle {circle!r}")


def chain_to_flat(p: ChainPoint) -> FlatCoord:
    return canonical_flat(*chart_coords(p.circle, p.theta))


def chain_to_config(p: ChainPoint) -> Configuration:
    return flat_to_config(chain_to_flat(p))


def flat_to_chain(f: FlatCoord) -> ChainPoint:
    """Identify a flat point lying on the spine; DomainError otherwise."""
    if f.square in MIXED_SQUARES:
        a_mid = abs(f.a - 0.5) <= EPS
        b_mid = abs(f.b - 0.5) <= EPS
        first = f.square == "AB"
        if b_mid:
            # Cross point (a_mid too) is the C vertex at theta = 1/2.
            return chain_point("H1" if first else "H2", f.a)
        if a_mid:
            return chain_point("V1" if first else "V2", f.b)
        raise DomainError(f"{f} is not on the spine")
    sigma = f.b - f.a
    if abs(abs(sigma) - 0.5) <= EPS:
        return chain_point("R" if f.square == "AA" else "Bc", f.a)
    raise DomainError(f"{f} is not on the spine")


def config_to_chain(c: Configuration) -> ChainPoint:
    return flat_to_chain(config_to_flat(c))


def on_spine(f: FlatCoord) -> bool:
    try:
        flat_to_chain(f)
    except DomainError:
        return False
    return True


# ---------------------------------------------------------------------------
# Metric
# ---------------------------------------------------------------------------


def arc_dist(theta0: float, theta1: float) -> float:
    d = abs(theta0 - theta1)
    return min(d, 1.0 - d)


def dist_chain(x: ChainPoint, y: ChainPoint) -> float:
    """Geodesic distance on the spine.

    Within one circle the direct arc is always optimal; between circles the
    geodesic exits through a vertex of each, with the vertex-to-vertex leg
    read off the collapsed 6-cycle.
    """
    best = math.inf
    if x.circle == y.circle:
        best = arc_dist(x.theta, y.theta)
    for u in CIRCLE_VERTICES[x.circle]:
        du = arc_dist(x.theta, vertex_theta_on(x.circle, u))
        for v in CIRCLE_VERTICES[y.circle]:
            dv = arc_dist(y.theta, vertex_theta_on(y.circle, v))
            cand = du + vertex_dist(u, v) + dv
            if cand < best:
                best = cand
    return best


def is_antipodal(x: ChainPoint, y: ChainPoint) -> bool:
    """True when two interior points face each other across one circle."""
    if x.is_vertex or y.is_vertex or x.circle != y.circle:
        return False
    return abs(arc_dist(x.theta, y.theta) - 0.5) <= EPS


# ---------------------------------------------------------------------------
# Graph structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Arc:
    """Half of a spine circle, running between consecutive vertices."""

    circle: str
    v_from: str
    v_to: str
    theta0: float
    theta1: float


@dataclass(frozen=True, slots=True)
class ChainGraph:
    vertex_ids: tuple[str, ...]
    edge_list: tuple[tuple[str, str], ...]
    arcs: tuple[Arc, ...]


@cache
def build_chain() -> ChainGraph:
    arcs = []
    for circle in CHAIN_CIRCLES:
        lo, hi = CIRCLE_VERTICES[circle]
        arcs.append(Arc(circle, lo, hi, 0.0, 0.5))
        arcs.append(Arc(circle, hi, lo, 0.5, 1.0))
    return ChainGraph(
        vertex_ids=CHAIN_VERTICES,
        edge_list=tuple((arc.v_from, arc.v_to) for arc in arcs),
        arcs=tuple(arcs),
    )


# ---------------------------------------------------------------------------
# Arc moves
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ChainStep:
    """A vertex-free sweep along one circle, in raw chart angles.

    Angles stay in [0, 1] and never straddle a multiple of 1/2 strictly, so a
    step maps to a single straight chart leg; a full crossing is represented
    by two steps meeting at the vertex.
    """

    circle: str
    t_from: float
    t_to: float
    direction: int

    @property
    def length(self) -> float:
        return abs(self.t_to - self.t_from)


def make_steps(circle: str, theta_from: float, theta_to: float, direction: int) -> list[ChainStep]:
    """Split a directed arc move into vertex-free steps.

    The move runs from theta_from in the given direction (+1 with theta
    increasing) until it reaches theta_to, never a full turn or more.
    """
    if direction not in (1, -1):
        raise DomainError(f"direction must be +1 or -1, got {direction!r}")
    t0 = theta_from % 1.0
    t1 = theta_to % 1.0
    span = ((t1 - t0) * direction) % 1.0
    if span <= EPS or span >= 1.0 - EPS:
        return []
    u0, u1 = t0, t0 + direction * span
    lo, hi = min(u0, u1), max(u0, u1)
    cuts = []
    k = math.floor(lo / 0.5) + 1
    while k * 0.5 < hi - EPS:
        if k * 0.5 > lo + EPS:
            cuts.append(k * 0.5)
        k += 1
    if direction < 0:
        cuts.reverse()
    us = [u0, *cuts, u1]
    steps = []
    for i, (ua, ub) in enumerate(zip(us, us[1:])):
        shift = math.floor(min(ua, ub) + EPS)
        ra, rb = ua - shift, ub - shift
        if i == len(us) - 2:
            # Land exactly on the requested endpoint float.
            for cand in (t1, t1 + 1.0):
                if abs(rb - cand) < 2 * EPS and cand <= 1.0:
                    rb = cand
                    break
        ra = min(max(ra, 0.0), 1.0)
        rb = min(max(rb, 0.0), 1.0)
        if abs(rb - ra) <= EPS:
            continue
        steps.append(ChainStep(circle, ra, rb, direction))
    return steps


def shortest_arc(theta_from: float, theta_to: float) -> tuple[int, float]:
    """(direction, span) of the shorter way around; a dead tie goes positive."""
    delta = (theta_to - theta_from) % 1.0
    if delta <= 0.5:
        return (1, delta)
    return (-1, 1.0 - delta)


def shortest_arc_path(x: ChainPoint, y: ChainPoint) -> list[ChainStep]:
    """Steps along the strictly shorter arc of a circle both points lie on.

    A dead tie (half a turn apart) goes positive; that only happens between
    the two vertices of a circle, so it is a safety net rather than a case the
    planner's dispatch ever relies on.
    """
    for circle in CHAIN_CIRCLES:
        tx = _theta_on(circle, x)
        ty = _theta_on(circle, y)
        if tx is not None and ty is not None:
            direction, _ = shortest_arc(tx, ty)
            return make_steps(circle, tx, ty, direction)
    raise DomainError(f"{x} and {y} share no circle")


def _theta_on(circle: str, p: ChainPoint) -> float | None:
    if p.is_vertex:
        if p.vertex in CIRCLE_VERTICES[circle]:
            return vertex_theta_on(circle, p.vertex)
        return None
    return p.theta if p.circle == circle else None


def step_to_leg(step: ChainStep) -> ChartLeg:
    hint = 0.5 * (step.t_from + step.t_to)
    sq0, a0, b0 = chart_coords(step.circle, step.t_from, hint)
    sq1, a1, b1 = chart_coords(step.circle, step.t_to, hint)
    if sq0 != sq1:
        raise ContractError("chain step straddles a chart branch")
    return ChartLeg(sq0[0], a0, a1, sq0[1], b0, b1)


def steps_to_legs(steps: list[ChainStep]) -> list[ChartLeg]:
    return [step_to_leg(s) for s in steps]


def step_endpoint(step: ChainStep, which: int) -> ChainPoint:
    theta = step.t_from if which == 0 else step.t_to
    return chain_point(step.circle, theta)


VERTEX_CONFIG = {
    "HA": configuration("A", 0.0, "A", 0.5),
    "HB": configuration("A", 0.0, "B", 0.5),
    "VA": configuration("A", 0.5, "A", 0.0),
    "VB": configuration("B", 0.5, "A", 0.0),
    "C1": configuration("A", 0.5, "B", 0.5),
    "C2": configuration("B", 0.5, "A", 0.5),
}
