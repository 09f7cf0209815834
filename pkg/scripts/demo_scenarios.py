"""Plan the three demo scenarios and write JSON plus SVG for each.

Usage: python scripts/demo_scenarios.py [outdir]
"""

import json
import sys
from pathlib import Path

from fig8plan.geometry import configuration
from fig8plan.planner import plan, plan_to_json, validate_plan
from fig8plan.render import render_svg
from fig8plan.spine import VERTEX_CONFIG

SCENARIOS = {
    "same_circle": (
        configuration("A", 0.12, "A", 0.62),
        configuration("A", 0.8, "A", 0.3),
    ),
    "mixed_circles": (
        configuration("A", 0.3, "B", 0.7),
        configuration("B", 0.25, "A", 0.6),
    ),
    "vertex_to_vertex": (VERTEX_CONFIG["C1"], VERTEX_CONFIG["C2"]),
}


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_out")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, (start, goal) in SCENARIOS.items():
        p = plan(start, goal)
        validate_plan(p)
        (outdir / f"{name}.json").write_text(json.dumps(plan_to_json(p), indent=2) + "\n")
        (outdir / f"{name}.svg").write_text(render_svg(p))
        print(
            f"{name}: instruction {p.instruction}, {p.hop_count} hops,"
            f" chain length {p.chain_length:.3f}"
        )
    print(f"wrote {len(SCENARIOS)} plans to {outdir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
