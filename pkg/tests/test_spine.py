"""Spine charts, canonical vertices, the chain metric, and arc moves."""

import pytest
from hypothesis import given, strategies as st

from fig8plan.errors import DomainError
from fig8plan.geometry import FlatCoord, configuration, path_from_legs
from fig8plan.spine import (
    CHAIN_CIRCLES,
    CHAIN_VERTICES,
    CIRCLE_VERTICES,
    VERTEX_CONFIG,
    ChainPoint,
    build_chain,
    chain_point,
    chain_to_config,
    chain_to_flat,
    config_to_chain,
    dist_chain,
    flat_to_chain,
    is_antipodal,
    make_steps,
    on_spine,
    shortest_arc_path,
    step_endpoint,
    positive_successor,
    shortest_arc,
    steps_to_legs,
    vertex_dist,
    vertex_point,
    vertex_theta_on,
)

chain_circles = st.sampled_from(CHAIN_CIRCLES)
angles = st.floats(min_value=0.0, max_value=1.0, exclude_max=True, allow_nan=False)


def fold(x):
    d = abs(x) % 1.0
    return min(d, 1.0 - d)


def test_vertex_canonical_reps():
    assert chain_point("R", 0.0) == ChainPoint("R", 0.0)  # HA
    assert chain_point("H2", 1.0 - 1e-12) == ChainPoint("R", 0.0)  # wraps to HA
    assert chain_point("R", 0.5) == ChainPoint("V1", 0.0)  # VA
    assert chain_point("H1", 0.0) == ChainPoint("Bc", 0.0)  # HB
    assert chain_point("Bc", 0.5) == ChainPoint("V2", 0.0)  # VB
    assert chain_point("V1", 0.5) == ChainPoint("H1", 0.5)  # C1
    assert chain_point("V2", 0.5) == ChainPoint("H2", 0.5)  # C2
    assert chain_point("R", 0.5 + 5e-10) == ChainPoint("V1", 0.0)


def test_every_vertex_lies_on_two_circles():
    # Two circles through each vertex, two arcs each: degree 4 everywhere.
    on = {v: [c for c in CHAIN_CIRCLES if v in CIRCLE_VERTICES[c]] for v in CHAIN_VERTICES}
    assert all(len(cs) == 2 for cs in on.values())


def test_vertex_configs():
    for name, config in VERTEX_CONFIG.items():
        assert chain_to_config(vertex_point(name)) == config
        assert config_to_chain(config) == vertex_point(name)


def test_successor_walk_closes_in_six():
    v = "C1"
    seen_circles = []
    for _ in range(6):
        circle, v = positive_successor(v)
        seen_circles.append(circle)
    assert v == "C1"
    assert sorted(seen_circles) == sorted(CHAIN_CIRCLES)


def test_chain_graph_counts():
    g = build_chain()
    assert len(g.vertex_ids) == 6
    assert len(g.edge_list) == 12
    assert len(g.arcs) == 12
    degree = {v: 0 for v in g.vertex_ids}
    for u, v in g.edge_list:
        degree[u] += 1
        degree[v] += 1
    assert all(d == 4 for d in degree.values())
    lengths = [abs(a.theta1 - a.theta0) for a in g.arcs]
    assert all(length == 0.5 for length in lengths)


@given(chain_circles, angles)
def test_chart_roundtrip(circle, theta):
    p = chain_point(circle, theta)
    f = chain_to_flat(p)
    assert on_spine(f)
    assert flat_to_chain(f) == p


def test_flat_to_chain_rejects_off_spine():
    with pytest.raises(DomainError):
        flat_to_chain(FlatCoord("AA", 0.3, 0.4))
    with pytest.raises(DomainError):
        flat_to_chain(FlatCoord("AB", 0.3, 0.4))


def test_dist_chain_frozen_values():
    ha, vb = vertex_point("HA"), vertex_point("VB")
    c1, c2 = vertex_point("C1"), vertex_point("C2")
    assert dist_chain(ha, vb) == pytest.approx(1.0)
    assert dist_chain(c1, c2) == pytest.approx(1.5)
    assert dist_chain(ha, vertex_point("VA")) == pytest.approx(0.5)
    assert dist_chain(ChainPoint("H1", 0.1), ChainPoint("H1", 0.45)) == pytest.approx(0.35)
    # Interior-to-interior across squares, optimal route VA then C1.
    assert dist_chain(ChainPoint("R", 0.2), ChainPoint("H1", 0.1)) == pytest.approx(1.2)


def test_vertex_dist_table():
    assert vertex_dist("HA", "HA") == 0.0
    assert vertex_dist("HA", "VA") == 0.5
    assert vertex_dist("HA", "C1") == 1.0
    assert vertex_dist("HA", "HB") == 1.5
    assert vertex_dist("VA", "VB") == 1.5
    assert vertex_dist("C1", "C2") == 1.5


@given(chain_circles, angles, chain_circles, angles)
def test_dist_chain_metric(c1, t1, c2, t2):
    x, y = chain_point(c1, t1), chain_point(c2, t2)
    d = dist_chain(x, y)
    assert d == pytest.approx(dist_chain(y, x))
    assert 0.0 <= d <= 1.5 + 1e-12
    if x == y:
        assert d < 1e-12


def test_is_antipodal():
    assert is_antipodal(ChainPoint("R", 0.2), ChainPoint("R", 0.7))
    assert not is_antipodal(ChainPoint("R", 0.2), ChainPoint("R", 0.69))
    assert not is_antipodal(ChainPoint("R", 0.2), ChainPoint("Bc", 0.7))
    # Vertices are excluded even though they sit half a turn apart.
    assert not is_antipodal(vertex_point("HA"), vertex_point("VA"))


def test_shortest_arc():
    assert shortest_arc(0.1, 0.3) == (1, pytest.approx(0.2))
    assert shortest_arc(0.3, 0.1) == (-1, pytest.approx(0.2))
    assert shortest_arc(0.9, 0.1) == (1, pytest.approx(0.2))
    direction, span = shortest_arc(0.1, 0.6)
    assert direction == 1 and span == pytest.approx(0.5)


def test_shortest_arc_path_interior_and_vertex():
    steps = shortest_arc_path(chain_point("R", 0.2), chain_point("R", 0.4))
    assert [(s.t_from, s.t_to) for s in steps] == [(0.2, 0.4)]

    # HA sits at theta 0 of R, so the short way to (R, 0.9) is negative.
    steps = shortest_arc_path(vertex_point("HA"), chain_point("R", 0.9))
    assert steps[0].direction == -1
    assert step_endpoint(steps[-1], 1) == chain_point("R", 0.9)

    # Dead tie between the two vertices of a circle goes positive.
    steps = shortest_arc_path(vertex_point("HA"), vertex_point("VA"))
    assert all(s.direction == +1 for s in steps)
    assert sum(s.length for s in steps) == pytest.approx(0.5)

    assert shortest_arc_path(vertex_point("C1"), vertex_point("C1")) == []

    with pytest.raises(DomainError):
        shortest_arc_path(chain_point("R", 0.2), chain_point("H1", 0.2))


def test_make_steps_frozen():
    steps = make_steps("R", 0.2, 0.9, 1)
    assert [(s.t_from, s.t_to) for s in steps] == [(0.2, 0.5), (0.5, 0.9)]
    steps = make_steps("H1", 0.2, 0.9, -1)
    assert [(s.t_from, s.t_to) for s in steps] == [(0.2, 0.0), (1.0, 0.9)]
    assert make_steps("R", 0.3, 0.3, 1) == []
    # Positive half turn between antipodal interiors.
    steps = make_steps("Bc", 0.7, 0.2, 1)
    assert [(s.t_from, s.t_to) for s in steps] == [(0.7, 1.0), (0.0, 0.2)]


@given(chain_circles, angles, angles, st.sampled_from((1, -1)))
def test_make_steps_properties(circle, t0, t1, direction):
    steps = make_steps(circle, t0, t1, direction)
    span = ((t1 - t0) * direction) % 1.0
    if span <= 1e-9 or span >= 1.0 - 1e-9:
        assert steps == []
        return
    # Endpoints within EPS of a vertex snap onto it, so allow that much slack.
    assert sum(s.length for s in steps) == pytest.approx(span, abs=3e-9)
    assert fold(steps[0].t_from - t0) <= 2e-9
    assert fold(steps[-1].t_to - t1) <= 2e-9
    for s in steps:
        lo, hi = min(s.t_from, s.t_to), max(s.t_from, s.t_to)
        for crit in (0.5,):
            assert not (lo < crit < hi)
        assert 0.0 <= lo and hi <= 1.0
        assert s.direction == direction
    for prev, nxt in zip(steps, steps[1:]):
        assert fold(prev.t_to - nxt.t_from) < 1e-9


def test_steps_to_path_stays_on_spine():
    steps = make_steps("R", 0.2, 0.9, 1)
    path = path_from_legs(steps_to_legs(steps))
    assert path.start == chain_to_config(ChainPoint("R", 0.2))
    assert path.end == chain_to_config(ChainPoint("R", 0.9))
    for k in range(33):
        c = path.config_at(k / 32)
        assert on_spine(__import__("fig8plan.geometry", fromlist=["config_to_flat"]).config_to_flat(c))


def test_steps_cross_center_wrap():
    # H1 angles wrap through HB, the center-and-pole vertex.
    steps = make_steps("H1", 0.9, 0.1, 1)
    path = path_from_legs(steps_to_legs(steps))
    assert path.start == chain_to_config(ChainPoint("H1", 0.9))
    assert path.end == chain_to_config(ChainPoint("H1", 0.1))
    mid = path.config_at(0.5)
    assert mid == VERTEX_CONFIG["HB"]


def test_vertex_theta_on():
    assert vertex_theta_on("R", "HA") == 0.0
    assert vertex_theta_on("R", "VA") == 0.5
    with pytest.raises(DomainError):
        vertex_theta_on("R", "C1")


def test_antipodal_slide_legs():
    # A half-turn sweep on a sub-diagonal keeps both robots moving in lockstep.
    steps = make_steps("R", 0.2, 0.7, 1)
    legs = steps_to_legs(steps)
    path = path_from_legs(legs)
    assert path.start.separation == pytest.approx(0.5)
    assert path.end.separation == pytest.approx(0.5)
