"""Randomized and exhaustive verification suites with independent oracles.

Every suite is a pure function of (seed, n): it draws its samples from a
private ``random.Random(seed)`` and reports a worst-case witness, so a failure
can be replayed exactly.  The distance oracles deliberately do not share code
with the analytic metrics they check: they discretize the track (resp. the
chain of circles) into a weighted graph and run Dijkstra on it.
"""

from __future__ import annotations

import time
from collections import defaultdict, deque
from dataclasses import dataclass
from random import Random

from .errors import DomainError
from .geometry import (
    EPS,
    CIRCLES,
    CirclePoint,
    Configuration,
    circle_point,
    config_dist,
    constant_path,
    dist_gamma,
    path_from_legs,
    path_min_separation,
    path_sup_distance,
)
from .planner import InstructionDomain, classify_domain, plan, plan_steps
from .retraction import retract
from .spine import (
    CHAIN_CIRCLES,
    CHAIN_VERTICES,
    CIRCLE_VERTICES,
    VERTEX_CONFIG,
    ChainPoint,
    chain_point,
    chain_to_config,
    chain_to_flat,
    dist_chain,
    flat_to_chain,
    is_antipodal,
    on_spine,
    steps_to_legs,
    vertex_point,
)

SUITE_NAMES = ("collision", "partition", "retraction", "continuity", "termination", "roundtrip")

# Grid resolution of the Dijkstra oracles, nodes per unit-circumference circle.
ORACLE_NODES = 1000


# ---------------------------------------------------------------------------
# graph invariants


def cycle_rank(g) -> int:
    """First Betti number E - V + 1 of a connected multigraph.

    ``g`` needs ``vertex_ids`` and ``edge_list`` attributes; disconnected
    input is rejected because the formula would silently undercount.
    """
    verts = list(g.vertex_ids)
    edges = list(g.edge_list)
    if not verts:
        raise DomainError("empty graph")
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    components = len(verts)
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            components -= 1
    if components != 1:
        raise DomainError(f"graph is disconnected ({components} components)")
    return len(edges) - len(verts) + 1


def spanning_tree_cycle_count(g) -> int:
    """Independent cross-check for cycle_rank: edges left over by a BFS tree."""
    verts = list(g.vertex_ids)
    edges = list(g.edge_list)
    if not verts:
        raise DomainError("empty graph")
    adj = defaultdict(list)
    for idx, (u, v) in enumerate(edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    seen = {verts[0]}
    tree = set()
    queue = deque([verts[0]])
    while queue:
        u = queue.popleft()
        for w, idx in adj[u]:
            if w not in seen:
                seen.add(w)
                tree.add(idx)
                queue.append(w)
    if len(seen) != len(verts):
        raise DomainError("graph is disconnected")
    return len(edges) - len(tree)


def tc_wedge(n: int, m: int) -> int:
    """Topological complexity of a wedge of n spheres of dimension m.

    The only case that stays at 2 is a single odd-dimensional sphere; any
    even-dimensional factor or any genuine wedge forces 3.
    """
    if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 1:
        raise DomainError(f"wedge parameters must be integers >= 1, got n={n}, m={m}")
    if n == 1 and m % 2 == 1:
        return 2
    return 3


# ---------------------------------------------------------------------------
# samplers


def random_config(rng: Random, min_sep: float = 1e-6) -> Configuration:
    """Uniform-ish valid configuration with separation at least min_sep.

    The separation floor keeps samples retractable: it bounds the scale factor
    of the retraction away from the singular guard.
    """
    while True:
        p1 = circle_point(rng.choice(CIRCLES), rng.random())
        p2 = circle_point(rng.choice(CIRCLES), rng.random())
        if dist_gamma(p1, p2) < min_sep:
            continue
        return Configuration(p1, p2)


def random_chain_point(rng: Random, vertex_prob: float = 0.0, margin: float = 1e-6) -> ChainPoint:
    if vertex_prob and rng.random() < vertex_prob:
        return vertex_point(rng.choice(CHAIN_VERTICES))
    while True:
        theta = rng.random()
        folded = theta % 0.5
        if min(folded, 0.5 - folded) > margin:
            return chain_point(rng.choice(CHAIN_CIRCLES), theta)


def _format_config(c: Configuration) -> str:
    return f"({c.p1.circle}:{c.p1.s:.6g}, {c.p2.circle}:{c.p2.s:.6g})"


def _format_chain(p: ChainPoint) -> str:
    if p.is_vertex:
        return p.vertex
    return f"({p.circle},{p.theta:.6g})"


# ---------------------------------------------------------------------------
# continuity probe

_LADDER = (1e-2, 1e-3, 1e-4)


def _steps_path(start: ChainPoint, moves):
    legs = []
    for group in moves:
        legs.extend(steps_to_legs(group))
    if not legs:
        return constant_path(chain_to_config(start))
    return path_from_legs(legs)


def _instruction_path(x: ChainPoint, y: ChainPoint):
    _, moves = plan_steps(x, y)
    return _steps_path(x, moves)


def _interior_theta(rng: Random, margin: float) -> float:
    # uniform over the part of a circle at least `margin` from both vertices
    half = 0.5 if rng.random() < 0.5 else 0.0
    return half + rng.uniform(margin, 0.5 - margin)


def _sample_u1_pair(rng: Random, margin: float) -> tuple[ChainPoint, ChainPoint]:
    while True:
        x = chain_point(rng.choice(CHAIN_CIRCLES), _interior_theta(rng, margin))
        y = chain_point(rng.choice(CHAIN_CIRCLES), _interior_theta(rng, margin))
        if x.circle == y.circle:
            span = abs(x.theta - y.theta)
            arc = min(span, 1.0 - span)
            if arc < margin or abs(arc - 0.5) < margin:
                continue
        if classify_domain(x, y) is InstructionDomain.U1:
            return x, y


def _sample_u2_pair(rng: Random, margin: float) -> tuple[ChainPoint, ChainPoint, bool]:
    """Returns (x, y, slide) where slide marks the antipodal family."""
    if rng.random() < 0.5:
        circle = rng.choice(CHAIN_CIRCLES)
        theta = _interior_theta(rng, margin)
        x = chain_point(circle, theta)
        y = chain_point(circle, (theta + 0.5) % 1.0)
        return x, y, True
    x = vertex_point(rng.choice(CHAIN_VERTICES))
    y = chain_point(rng.choice(CHAIN_CIRCLES), _interior_theta(rng, margin))
    return x, y, False


def _u2_perturbations(x, y, slide, delta):
    out = []
    if slide:
        for sign in (+1.0, -1.0):
            t = (x.theta + sign * delta) % 1.0
            out.append((chain_point(x.circle, t), chain_point(x.circle, (t + 0.5) % 1.0)))
    else:
        for sign in (+1.0, -1.0):
            out.append((x, chain_point(y.circle, (y.theta + sign * delta) % 1.0)))
    return out


def continuity_probe(
    domain: InstructionDomain,
    seed: int,
    deltas=_LADDER,
    samples: int = 16,
    sup_samples: int = 256,
) -> list[tuple[float, float]]:
    """Max sup-distance between paths of nearby in-domain inputs, per delta.

    Perturbations stay strictly inside the instruction's domain: base pairs
    keep a margin of 10*delta from the domain boundary, and for U2 the
    perturbation moves along the antipodal stratum (both points slide
    together) or holds the vertex fixed.  U3 has a finite domain, so the probe
    degenerates to running each vertex pair twice and comparing.
    """
    deltas = tuple(deltas)
    if not deltas or any(d <= 1e-12 for d in deltas):
        raise DomainError("deltas must be positive and above 1e-12")
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise DomainError("deltas must be strictly decreasing")
    rng = Random(seed)
    rows = []
    if domain is InstructionDomain.U3:
        pairs = [
            (vertex_point(u), vertex_point(v))
            for u in CHAIN_VERTICES
            for v in CHAIN_VERTICES
        ]
        for delta in deltas:
            worst = 0.0
            for x, y in pairs:
                first = _instruction_path(x, y)
                again = _instruction_path(x, y)
                worst = max(worst, path_sup_distance(first, again, sup_samples))
            rows.append((delta, worst))
        return rows

    for delta in deltas:
        margin = 10.0 * delta
        if margin >= 0.24:
            raise DomainError(f"delta {delta} leaves no room for the boundary margin")
        worst = 0.0
        for _ in range(samples):
            if domain is InstructionDomain.U1:
                x, y = _sample_u1_pair(rng, margin)
                perturbed = []
                for sx in (+1.0, -1.0):
                    for sy in (+1.0, -1.0):
                        perturbed.append(
                            (
                                chain_point(x.circle, (x.theta + sx * delta) % 1.0),
                                chain_point(y.circle, (y.theta + sy * delta) % 1.0),
                            )
                        )
            else:
                x, y, slide = _sample_u2_pair(rng, margin)
                perturbed = _u2_perturbations(x, y, slide, delta)
            base = _instruction_path(x, y)
            for x2, y2 in perturbed:
                if classify_domain(x2, y2) is not domain:
                    raise DomainError(
                        f"perturbation left {domain}: {_format_chain(x2)}, {_format_chain(y2)}"
                    )
                worst = max(worst, path_sup_distance(base, _instruction_path(x2, y2), sup_samples))
        rows.append((delta, worst))
    return rows


# ---------------------------------------------------------------------------
# Dijkstra oracles on discretized graphs


def _dijkstra_lookup(n_nodes, edges, queries):
    """Distances for (source, target) node-id pairs via scipy's Dijkstra."""
    import numpy as np
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import dijkstra

    rows = np.array([e[0] for e in edges])
    cols = np.array([e[1] for e in edges])
    data = np.array([e[2] for e in edges])
    graph = coo_matrix((data, (rows, cols)), shape=(n_nodes, n_nodes))
    sources = sorted({s for s, _ in queries})
    dist = dijkstra(graph, directed=False, indices=sources)
    index = {s: i for i, s in enumerate(sources)}
    return [float(dist[index[s], t]) for s, t in queries]


def gamma_oracle(pairs: list[tuple[CirclePoint, CirclePoint]]) -> list[float]:
    """Track distances from a discretized figure eight, ORACLE_NODES per circle."""
    n = ORACLE_NODES
    step = 1.0 / n

    def node(p: CirclePoint) -> int:
        k = int(round(p.s * n)) % n
        if k == 0:
            return 0
        return k if p.circle == "A" else n - 1 + k

    edges = []

    def ring(ids):
        for i, u in enumerate(ids):
            edges.append((u, ids[(i + 1) % len(ids)], step))

    ring([0] + list(range(1, n)))
    ring([0] + list(range(n, 2 * n - 1)))
    queries = [(node(p), node(q)) for p, q in pairs]
    return _dijkstra_lookup(2 * n - 1, edges, queries)


def chain_oracle(pairs: list[tuple[ChainPoint, ChainPoint]]) -> list[float]:
    """Chain-of-circles distances from a discretized chain graph."""
    n = ORACLE_NODES
    step = 1.0 / n
    vid = {v: i for i, v in enumerate(CHAIN_VERTICES)}
    node_of = {}
    next_id = len(CHAIN_VERTICES)
    for circle in CHAIN_CIRCLES:
        lo, hi = CIRCLE_VERTICES[circle]
        for k in range(n):
            if k == 0:
                node_of[(circle, k)] = vid[lo]
            elif k == n // 2:
                node_of[(circle, k)] = vid[hi]
            else:
                node_of[(circle, k)] = next_id
                next_id += 1
    edges = []
    for circle in CHAIN_CIRCLES:
        for k in range(n):
            edges.append((node_of[(circle, k)], node_of[(circle, (k + 1) % n)], step))

    def node(p: ChainPoint) -> int:
        if p.is_vertex:
            return vid[p.vertex]
        k = int(round(p.theta * n)) % n
        return node_of[(p.circle, k)]

    queries = [(node(p), node(q)) for p, q in pairs]
    return _dijkstra_lookup(next_id, edges, queries)


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    n: int
    passed: bool
    witness: str
    elapsed_ms: float

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "n": self.n,
            "pass": self.passed,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }


def _suite_collision(rng: Random, n: int) -> tuple[bool, str]:
    worst_end = 0.0
    worst_sep = float("inf")
    for i in range(n):
        start = random_config(rng)
        goal = random_config(rng)
        p = plan(start, goal)
        path = p.path
        err = max(
            config_dist(path.config_at(0.0), start),
            config_dist(path.config_at(1.0), goal),
        )
        sep = path_min_separation(path, 64)
        worst_end = max(worst_end, err)
        worst_sep = min(worst_sep, sep)
        if err > 1e-9 or sep <= 0.0:
            return False, (
                f"pair {i}: start {_format_config(start)} goal {_format_config(goal)}"
                f" endpoint err {err:.3e} min sep {sep:.3e}"
            )
    return True, f"worst endpoint err {worst_end:.3e}, min separation {worst_sep:.3e}"


def _domain_flags(x: ChainPoint, y: ChainPoint) -> tuple[bool, bool, bool]:
    both_vertex = x.is_vertex and y.is_vertex
    any_vertex = x.is_vertex or y.is_vertex
    anti = is_antipodal(x, y)
    u3 = both_vertex
    u2 = (any_vertex or anti) and not both_vertex
    u1 = not (any_vertex or anti)
    return u1, u2, u3


def _suite_partition(rng: Random, n: int) -> tuple[bool, str]:
    counts = {d: 0 for d in InstructionDomain}
    for i in range(n):
        kind = rng.random()
        if kind < 0.60:
            x = random_chain_point(rng)
            y = random_chain_point(rng)
        elif kind < 0.75:
            x = random_chain_point(rng, vertex_prob=0.5)
            y = random_chain_point(rng, vertex_prob=0.5)
        else:
            x = random_chain_point(rng)
            y = chain_point(x.circle, (x.theta + 0.5) % 1.0)
        flags = _domain_flags(x, y)
        if sum(flags) != 1:
            return False, f"pair {i}: {_format_chain(x)},{_format_chain(y)} flags {flags}"
        tag = classify_domain(x, y)
        expected = (InstructionDomain.U1, InstructionDomain.U2, InstructionDomain.U3)[
            flags.index(True)
        ]
        if tag is not expected:
            return False, (
                f"pair {i}: {_format_chain(x)},{_format_chain(y)}"
                f" classified {tag.name}, predicates say {expected.name}"
            )
        counts[tag] += 1
    for u in CHAIN_VERTICES:
        for v in CHAIN_VERTICES:
            if classify_domain(vertex_point(u), vertex_point(v)) is not InstructionDomain.U3:
                return False, f"vertex pair ({u},{v}) not U3"
    return True, (
        f"counts U1={counts[InstructionDomain.U1]} U2={counts[InstructionDomain.U2]}"
        f" U3={counts[InstructionDomain.U3]}, 36 vertex pairs all U3"
    )


def _suite_retraction(rng: Random, n: int) -> tuple[bool, str]:
    worst_fix = 0.0
    worst_trace = 0.0
    for i in range(n):
        c = random_config(rng)
        r = retract(c)
        if not on_spine(r.flat):
            return False, f"sample {i}: image of {_format_config(c)} is off the spine"
        image_config = chain_to_config(r.point)
        again = retract(image_config)
        fix_err = config_dist(chain_to_config(again.point), image_config)
        worst_fix = max(worst_fix, fix_err)
        if fix_err > 1e-9:
            return False, f"sample {i}: idempotence error {fix_err:.3e} at {_format_config(c)}"
        trace = r.trace
        end_err = max(
            config_dist(trace.config_at(0.0), c),
            config_dist(trace.config_at(1.0), chain_to_config(r.point)),
        )
        worst_trace = max(worst_trace, end_err)
        if end_err > 1e-9:
            return False, f"sample {i}: trace endpoint error {end_err:.3e}"
        if path_min_separation(trace, 64) <= 0.0:
            return False, f"sample {i}: trace of {_format_config(c)} collides"
    ok, witness = _gluing_probe(rng, max(n // 10, 100))
    if not ok:
        return False, witness
    return True, (
        f"worst idempotence {worst_fix:.3e}, worst trace endpoint {worst_trace:.3e}; {witness}"
    )


def _gluing_probe(rng: Random, n: int, delta: float = 1e-4, margin: float = 0.05) -> tuple[bool, str]:
    """Retraction images of center-straddling twins stay 50-Lipschitz close.

    A twin pair puts one robot just off the center on two different branches
    (distance delta apart on the track) while the other robot sits at least
    `margin` away from the center, and compares the chain distance of the two
    spine images against 50x the configuration distance.
    """
    branches = [("A", False), ("A", True), ("B", False), ("B", True)]
    worst_ratio = 0.0
    for i in range(n):
        circle_a, far_a = branches[rng.randrange(4)]
        circle_b, far_b = branches[rng.randrange(4)]
        if (circle_a, far_a) == (circle_b, far_b):
            circle_b, far_b = branches[(branches.index((circle_a, far_a)) + 1 + rng.randrange(3)) % 4]
        s = delta / 2.0
        moving_a = circle_point(circle_a, 1.0 - s if far_a else s)
        moving_b = circle_point(circle_b, 1.0 - s if far_b else s)
        other = circle_point(rng.choice(CIRCLES), rng.uniform(margin, 1.0 - margin))
        if rng.random() < 0.5:
            ca, cb = Configuration(moving_a, other), Configuration(moving_b, other)
        else:
            ca, cb = Configuration(other, moving_a), Configuration(other, moving_b)
        gap = config_dist(ca, cb)
        image_gap = dist_chain(retract(ca).point, retract(cb).point)
        ratio = image_gap / gap
        worst_ratio = max(worst_ratio, ratio)
        if image_gap > 50.0 * gap:
            return False, (
                f"gluing pair {i}: {_format_config(ca)} vs {_format_config(cb)}"
                f" image gap {image_gap:.3e} exceeds 50x {gap:.3e}"
            )
    return True, f"gluing probe worst ratio {worst_ratio:.2f} (bound 50)"


def _suite_continuity(rng: Random, n: int) -> tuple[bool, str]:
    summary = []
    for domain in InstructionDomain:
        rows = continuity_probe(domain, seed=rng.randrange(2**32), samples=n)
        values = [v for _, v in rows]
        if domain is InstructionDomain.U3:
            if any(v != 0.0 for v in values):
                return False, f"U3 determinism broken: {rows}"
        else:
            if any(b >= a for a, b in zip(values, values[1:])):
                return False, f"{domain.name} ladder not strictly decreasing: {rows}"
            at_1e3 = dict(rows)[1e-3]
            if at_1e3 >= 0.05:
                return False, f"{domain.name} sup distance {at_1e3:.3f} at delta 1e-3"
        summary.append(f"{domain.name}:" + "/".join(f"{v:.2e}" for v in values))
    return True, " ".join(summary)


def _suite_termination(rng: Random, n: int) -> tuple[bool, str]:
    max_hops = 0
    max_len = 0.0
    for i in range(n):
        start = random_config(rng)
        goal = random_config(rng)
        p = plan(start, goal)
        max_hops = max(max_hops, p.hop_count)
        max_len = max(max_len, p.chain_length)
        if p.hop_count > 7 or p.chain_length > 4.0:
            return False, (
                f"pair {i}: {_format_config(start)} -> {_format_config(goal)}"
                f" hops {p.hop_count} length {p.chain_length:.3f}"
            )
    for u in CHAIN_VERTICES:
        for v in CHAIN_VERTICES:
            p = plan(VERTEX_CONFIG[u], VERTEX_CONFIG[v])
            max_hops = max(max_hops, p.hop_count)
            max_len = max(max_len, p.chain_length)
            if p.hop_count > 7 or p.chain_length > 4.0:
                return False, f"vertex pair ({u},{v}) hops {p.hop_count}"
    return True, f"max hops {max_hops} (bound 7), max chain length {max_len:.3f} (bound 4)"


def _suite_roundtrip(rng: Random, n: int) -> tuple[bool, str]:
    worst_round = 0.0
    for i in range(n):
        p = random_chain_point(rng, vertex_prob=0.1)
        f = chain_to_flat(p)
        p2 = flat_to_chain(f)
        if p2 != p:
            err = abs(p2.theta - p.theta)
            worst_round = max(worst_round, err)
            if p2.circle != p.circle or err > 1e-12:
                return False, f"sample {i}: {_format_chain(p)} came back as {_format_chain(p2)}"
        f2 = chain_to_flat(p2)
        err = max(abs(f2.a - f.a), abs(f2.b - f.b)) if f2.square == f.square else 1.0
        worst_round = max(worst_round, err)
        if err > 1e-12:
            return False, f"sample {i}: flat roundtrip drift {err:.3e}"
    pairs_n = min(n, 1000)
    gamma_pairs = [
        (
            circle_point(rng.choice(CIRCLES), rng.random()),
            circle_point(rng.choice(CIRCLES), rng.random()),
        )
        for _ in range(pairs_n)
    ]
    oracle_vals = gamma_oracle(gamma_pairs)
    tol = 2.0 / ORACLE_NODES
    worst_gamma = 0.0
    for (p, q), ov in zip(gamma_pairs, oracle_vals):
        diff = abs(dist_gamma(p, q) - ov)
        worst_gamma = max(worst_gamma, diff)
        if diff > tol:
            return False, (
                f"dist_gamma({p.circle}:{p.s:.6g},{q.circle}:{q.s:.6g})"
                f" off oracle by {diff:.3e}"
            )
    chain_pairs = [
        (random_chain_point(rng, vertex_prob=0.1), random_chain_point(rng, vertex_prob=0.1))
        for _ in range(pairs_n)
    ]
    oracle_vals = chain_oracle(chain_pairs)
    worst_chain = 0.0
    for (p, q), ov in zip(chain_pairs, oracle_vals):
        diff = abs(dist_chain(p, q) - ov)
        worst_chain = max(worst_chain, diff)
        if diff > tol:
            return False, (
                f"dist_chain({_format_chain(p)},{_format_chain(q)}) off oracle by {diff:.3e}"
            )
    return True, (
        f"roundtrip drift {worst_round:.1e}, gamma oracle gap {worst_gamma:.1e},"
        f" chain oracle gap {worst_chain:.1e} (tol {tol:.0e})"
    )


_SUITES = {
    "collision": (_suite_collision, 1000),
    "partition": (_suite_partition, 20000),
    "retraction": (_suite_retraction, 1000),
    "continuity": (_suite_continuity, 12),
    "termination": (_suite_termination, 1000),
    "roundtrip": (_suite_roundtrip, 500),
}


def run_suite(name: str, seed: int = 0, n: int | None = None) -> SuiteReport:
    """Run one named suite; deterministic for a fixed (seed, n)."""
    if name not in _SUITES:
        raise DomainError(f"unknown suite {name!r}, expected one of {', '.join(SUITE_NAMES)}")
    fn, default_n = _SUITES[name]
    if n is None:
        n = default_n
    if n < 1:
        raise DomainError("n must be positive")
    rng = Random(seed)
    t0 = time.perf_counter()
    passed, witness = fn(rng, n)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return SuiteReport(suite=name, seed=seed, n=n, passed=passed, witness=witness, elapsed_ms=elapsed)
