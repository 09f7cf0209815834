"""End-to-end acceptance checks with explicit tolerances and time budgets.

The heavyweight sample batch (ten thousand seeded start/goal pairs) is planned
once in a module fixture and shared by the collision-freedom and termination
checks so the wall-clock budget covers a single planning pass.
"""

import json
from random import Random
from time import perf_counter

import pytest

from fig8plan.cli import main
from fig8plan.geometry import config_dist, configuration, dist_gamma, path_min_separation
from fig8plan.planner import InstructionDomain, classify_domain, plan, validate_plan
from fig8plan.render import render_svg
from fig8plan.spine import (
    CHAIN_CIRCLES,
    CHAIN_VERTICES,
    CIRCLE_VERTICES,
    VERTEX_CONFIG,
    build_chain,
    dist_chain,
    positive_successor,
    vertex_point,
)
from fig8plan.verify import (
    chain_oracle,
    continuity_probe,
    gamma_oracle,
    random_chain_point,
    random_config,
    run_suite,
)

BATCH_SEED = 20260819
BATCH_SIZE = 10_000


@pytest.fixture(scope="module")
def plan_batch():
    rng = Random(BATCH_SEED)
    t0 = perf_counter()
    batch = []
    for _ in range(BATCH_SIZE):
        start = random_config(rng, min_sep=1e-6)
        goal = random_config(rng, min_sep=1e-6)
        batch.append((start, goal, plan(start, goal)))
    elapsed = perf_counter() - t0
    return batch, elapsed


def test_instruction_count_command(capsys):
    t0 = perf_counter()
    code = main(["tc"])
    elapsed = perf_counter() - t0
    out = capsys.readouterr().out.strip()
    assert code == 0
    assert json.loads(out) == {"b1": 7, "tc": 3}
    assert elapsed < 1.0


def test_chain_structure_and_closure():
    t0 = perf_counter()
    g = build_chain()
    assert len(g.vertex_ids) == 6
    assert len(g.edge_list) == 12
    assert len(g.arcs) == 12
    assert all(abs((a.theta1 - a.theta0) - 0.5) < 1e-12 for a in g.arcs)

    # every circle carries exactly two vertices, every vertex two circles
    degree = {v: 0 for v in g.vertex_ids}
    for u, v in g.edge_list:
        degree[u] += 1
        degree[v] += 1
    assert all(d == 4 for d in degree.values())
    incidence = {v: set() for v in CHAIN_VERTICES}
    for circle in CHAIN_CIRCLES:
        lo, hi = CIRCLE_VERTICES[circle]
        incidence[lo].add(circle)
        incidence[hi].add(circle)
    assert all(len(cs) == 2 for cs in incidence.values())

    # collapsing parallel arcs leaves the six-cycle necklace
    simple = {frozenset(e) for e in g.edge_list}
    ring = ("HA", "VA", "C1", "HB", "VB", "C2")
    expected = {frozenset((ring[i], ring[(i + 1) % 6])) for i in range(6)}
    assert simple == expected

    # the positive successor walk closes in six steps and uses each circle once
    walk = ["C1"]
    circles = []
    for _ in range(6):
        circle, nxt = positive_successor(walk[-1])
        circles.append(circle)
        walk.append(nxt)
    assert walk[-1] == "C1"
    assert sorted(circles) == sorted(CHAIN_CIRCLES)
    assert sorted(walk[:-1]) == sorted(CHAIN_VERTICES)
    assert perf_counter() - t0 < 1.0


def test_planned_paths_are_collision_free(plan_batch):
    batch, plan_elapsed = plan_batch
    t0 = perf_counter()
    for start, goal, p in batch:
        assert config_dist(p.path.config_at(0.0), start) <= 1e-9
        assert config_dist(p.path.config_at(1.0), goal) <= 1e-9
        assert path_min_separation(p.path, 64) > 0.0
    check_elapsed = perf_counter() - t0
    assert plan_elapsed + check_elapsed < 30.0


def test_domains_partition_the_inputs():
    report = run_suite("partition", seed=4, n=100_000)
    assert report.passed, report.witness

    # U3 fires exactly on the 36 vertex pairs
    for u in CHAIN_VERTICES:
        for v in CHAIN_VERTICES:
            assert classify_domain(vertex_point(u), vertex_point(v)) is InstructionDomain.U3
    rng = Random(99)
    for _ in range(500):
        x = random_chain_point(rng)
        y = random_chain_point(rng, vertex_prob=0.5)
        if not (x.is_vertex and y.is_vertex):
            assert classify_domain(x, y) is not InstructionDomain.U3


def test_retraction_suite_with_gluing_probe():
    report = run_suite("retraction", seed=12, n=10_000)
    assert report.passed, report.witness


def test_instruction_continuity_ladders():
    t0 = perf_counter()
    deltas = (1e-2, 1e-3, 1e-4)
    for domain in (InstructionDomain.U1, InstructionDomain.U2):
        rows = continuity_probe(domain, seed=31, deltas=deltas)
        values = [v for _, v in rows]
        assert values[0] > values[1] > values[2], f"{domain}: {rows}"
        assert values[1] < 0.05, f"{domain}: sup {values[1]} at delta 1e-3"
    rows = continuity_probe(InstructionDomain.U3, seed=31, deltas=deltas)
    assert [v for _, v in rows] == [0.0, 0.0, 0.0]
    assert perf_counter() - t0 < 120.0


def test_hop_and_length_bounds(plan_batch):
    batch, _ = plan_batch
    for _, _, p in batch:
        assert p.hop_count <= 7
        assert p.chain_length <= 4.0
    for u in CHAIN_VERTICES:
        for v in CHAIN_VERTICES:
            p = plan(VERTEX_CONFIG[u], VERTEX_CONFIG[v])
            assert p.hop_count <= 7
            assert p.chain_length <= 4.0


def test_metrics_match_discretized_oracles():
    from fig8plan.geometry import circle_point

    rng = Random(61)
    tol = 2e-3  # two grid steps at a thousand nodes per circle
    gamma_pairs = [
        (
            circle_point(rng.choice("AB"), rng.random()),
            circle_point(rng.choice("AB"), rng.random()),
        )
        for _ in range(1000)
    ]
    for (p, q), oracle in zip(gamma_pairs, gamma_oracle(gamma_pairs)):
        assert abs(dist_gamma(p, q) - oracle) <= tol

    chain_pairs = [
        (random_chain_point(rng, vertex_prob=0.1), random_chain_point(rng, vertex_prob=0.1))
        for _ in range(1000)
    ]
    for (p, q), oracle in zip(chain_pairs, chain_oracle(chain_pairs)):
        assert abs(dist_chain(p, q) - oracle) <= tol


def test_scenario_smoke():
    scenarios = [
        (configuration("A", 0.12, "A", 0.62), configuration("A", 0.8, "A", 0.3)),
        (configuration("A", 0.3, "B", 0.7), configuration("B", 0.25, "A", 0.6)),
        (VERTEX_CONFIG["C1"], VERTEX_CONFIG["C2"]),
    ]
    for start, goal in scenarios:
        p = plan(start, goal)
        validate_plan(p)
        svg = render_svg(p)
        assert svg.count('class="spine-arc"') == 12
        assert svg.count('class="vertex"') == 6
        assert svg.count('<path class="start-marker"') == 1
