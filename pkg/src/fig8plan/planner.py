"""Three-instruction trajectory planner.

A plan runs in three phases: retract the start configuration onto the spine,
walk the spine to the goal's image, then play the goal's retraction trace
backwards.  The middle walk is chosen by one of three instructions keyed to
how degenerate the endpoint pair is on the spine:

  1  both images interior and not facing each other across a circle,
  2  one image a vertex, or the images an antipodal interior pair,
  3  both images vertices.

Instruction 1 rides shortest arcs, hopping positively to the next vertex
until the goal's circle comes up.  Instruction 2 is the same walk with one
guard: a half-turn tie is always broken in the positive direction, which is
what keeps the choice stable under perturbation of an antipodal pair.
Instruction 3 follows the positive successor cycle through the vertices.
Every walk terminates within seven arc moves.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ContractError
from .geometry import (
    EPS,
    ChartLeg,
    Configuration,
    PhysPath,
    config_dist,
    config_to_flat,
    constant_path,
    path_from_legs,
    path_min_separation,
)
from .retraction import retract
from .spine import (
    CIRCLE_VERTICES,
    ChainPoint,
    ChainStep,
    arc_dist,
    chain_point,
    is_antipodal,
    make_steps,
    on_spine,
    positive_successor,
    shortest_arc,
    steps_to_legs,
    vertex_point,
    vertex_theta_on,
)


class InstructionDomain(enum.Enum):
    U1 = 1
    U2 = 2
    U3 = 3

    @property
    def number(self) -> int:
        return self.value


def classify_domain(x: ChainPoint, y: ChainPoint) -> InstructionDomain:
    if x.is_vertex and y.is_vertex:
        return InstructionDomain.U3
    if x.is_vertex or y.is_vertex or is_antipodal(x, y):
        return InstructionDomain.U2
    return InstructionDomain.U1


def _goal_theta_on(circle: str, goal: ChainPoint) -> float | None:
    """Angle of the goal on the given circle, None when it does not lie there."""
    if goal.is_vertex:
        if goal.vertex in CIRCLE_VERTICES[circle]:
            return vertex_theta_on(circle, goal.vertex)
        return None
    return goal.theta if goal.circle == circle else None


def _walk(start: ChainPoint, goal: ChainPoint, positive_ties: bool) -> list[list[ChainStep]]:
    """Shared walk for instructions 1 and 2.

    Each entry of the result is one arc move.  The positive_ties flag forces
    half-turn final arcs to run positively instead of leaving the choice to
    the shortest-arc tie break.
    """
    cur = start
    moves: list[list[ChainStep]] = []
    for _ in range(8):
        if cur == goal:
            return moves
        circle = cur.circle
        goal_theta = _goal_theta_on(circle, goal)
        if goal_theta is not None:
            if positive_ties and abs(arc_dist(cur.theta, goal_theta) - 0.5) <= EPS:
                direction = 1
            else:
                direction, _ = shortest_arc(cur.theta, goal_theta)
            steps = make_steps(circle, cur.theta, goal_theta, direction)
            if steps:
                moves.append(steps)
            return moves
        target = 0.5 if cur.theta < 0.5 else 0.0
        steps = make_steps(circle, cur.theta, target, 1)
        if steps:
            moves.append(steps)
        cur = chain_point(circle, target)
    raise ContractError("spine walk exceeded its hop budget")


def instruction1(start: ChainPoint, goal: ChainPoint) -> list[list[ChainStep]]:
    return _walk(start, goal, positive_ties=False)


def instruction2(start: ChainPoint, goal: ChainPoint) -> list[list[ChainStep]]:
    return _walk(start, goal, positive_ties=True)


def instruction3(start: ChainPoint, goal: ChainPoint) -> list[list[ChainStep]]:
    """Positive successor hops between vertices; empty for a vertex and itself."""
    cur = start
    moves: list[list[ChainStep]] = []
    for _ in range(7):
        if cur == goal:
            return moves
        circle, nxt = positive_successor(cur.vertex)
        t0 = vertex_theta_on(circle, cur.vertex)
        t1 = vertex_theta_on(circle, nxt)
        moves.append(make_steps(circle, t0, t1, 1))
        cur = vertex_point(nxt)
    raise ContractError("successor walk exceeded its hop budget")


_DISPATCH = {
    InstructionDomain.U1: instruction1,
    InstructionDomain.U2: instruction2,
    InstructionDomain.U3: instruction3,
}


def plan_steps(start: ChainPoint, goal: ChainPoint) -> tuple[InstructionDomain, list[list[ChainStep]]]:
    domain = classify_domain(start, goal)
    return domain, _DISPATCH[domain](start, goal)


@dataclass(frozen=True)
class Plan:
    """A complete collision-free trajectory between two configurations."""

    start: Configuration
    goal: Configuration
    domain: InstructionDomain
    chain_start: ChainPoint
    chain_goal: ChainPoint
    steps: tuple[ChainStep, ...]
    hop_count: int
    path: PhysPath
    spine_interval: tuple[float, float]
    trace_in: PhysPath
    trace_out: PhysPath

    @property
    def instruction(self) -> int:
        return self.domain.number

    @property
    def chain_length(self) -> float:
        return sum(s.length for s in self.steps)


def _trace_legs(trace: PhysPath, reverse: bool = False) -> list[ChartLeg]:
    segments = reversed(trace.segments) if reverse else trace.segments
    legs = []
    for seg in segments:
        if reverse:
            leg = ChartLeg(seg.circle1, seg.a1, seg.a0, seg.circle2, seg.b1, seg.b0)
        else:
            leg = ChartLeg(seg.circle1, seg.a0, seg.a1, seg.circle2, seg.b0, seg.b1)
        if leg.sweep > 0.0:
            legs.append(leg)
    return legs


def plan(start: Configuration, goal: Configuration) -> Plan:
    """Plan a collision-free trajectory from start to goal."""
    if start == goal:
        # coincident endpoints short-circuit to the constant path; a collapsed
        # spine interval marks that the path has no spine portion to check
        r = retract(start)
        still = constant_path(start)
        on = on_spine(config_to_flat(start))
        return Plan(
            start=start,
            goal=goal,
            domain=classify_domain(r.point, r.point),
            chain_start=r.point,
            chain_goal=r.point,
            steps=(),
            hop_count=0,
            path=still,
            spine_interval=(0.0, 1.0) if on else (0.5, 0.5),
            trace_in=still,
            trace_out=still,
        )
    r_in = retract(start)
    r_out = retract(goal)
    domain, moves = plan_steps(r_in.point, r_out.point)
    steps = tuple(s for move in moves for s in move)

    legs_in = _trace_legs(r_in.trace)
    legs_spine = steps_to_legs(list(steps))
    legs_out = _trace_legs(r_out.trace, reverse=True)
    legs = legs_in + legs_spine + legs_out
    if legs:
        path = path_from_legs(legs)
    else:
        path = constant_path(start)

    sw_in = sum(leg.sweep for leg in legs_in)
    sw_spine = sum(leg.sweep for leg in legs_spine)
    total = sw_in + sw_spine + sum(leg.sweep for leg in legs_out)
    if total > 0.0:
        interval = (sw_in / total, (sw_in + sw_spine) / total)
    else:
        interval = (0.0, 1.0)

    return Plan(
        start=start,
        goal=goal,
        domain=domain,
        chain_start=r_in.point,
        chain_goal=r_out.point,
        steps=steps,
        hop_count=len(moves),
        path=path,
        spine_interval=interval,
        trace_in=r_in.trace,
        trace_out=r_out.trace,
    )


def plan_to_json(p: Plan, digits: int = 12) -> dict:
    """JSON-ready summary: instruction number, hop count, timed waypoints."""

    def rnd(x: float) -> float:
        return float(f"{x:.{digits}g}")

    waypoints = [
        {
            "t": rnd(t),
            "r1": {"circle": c.p1.circle, "s": rnd(c.p1.s)},
            "r2": {"circle": c.p2.circle, "s": rnd(c.p2.s)},
        }
        for t, c in p.path.waypoints
    ]
    return {"instruction": p.instruction, "hops": p.hop_count, "waypoints": waypoints}


def validate_plan(p: Plan, tol: float = EPS, samples: int = 64) -> None:
    """Check a plan's contract; raises ContractError with a witness on failure."""
    if config_dist(p.path.start, p.start) > tol:
        raise ContractError(f"plan does not start at its start: {p.path.start} vs {p.start}")
    if config_dist(p.path.end, p.goal) > tol:
        raise ContractError(f"plan does not end at its goal: {p.path.end} vs {p.goal}")
    sep = path_min_separation(p.path, n=samples)
    if sep <= 0.0:
        raise ContractError(f"plan separation dropped to {sep}")
    t0, t1 = p.spine_interval
    if t1 > t0:
        for k in range(17):
            t = t0 + (t1 - t0) * (k / 16.0)
            f = config_to_flat(p.path.config_at(t))
            if not on_spine(f):
                raise ContractError(f"plan leaves the spine at t={t}: {f}")
    elif p.start != p.goal:
        # collapsed interval with distinct endpoints: both retraction images
        # coincide, so the single middle instant must sit on the spine
        f = config_to_flat(p.path.config_at(t0))
        if not on_spine(f):
            raise ContractError(f"plan middle is off the spine: {f}")
    if p.hop_count > 7:
        raise ContractError(f"plan used {p.hop_count} hops")
    if p.chain_length > 4.0:
        raise ContractError(f"plan walked {p.chain_length} along the spine")
