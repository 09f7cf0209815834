"""Collision-free motion planning for two robots on a figure-eight track."""

from .errors import CollisionError, ContractError, DomainError, SingularityError
from .geometry import (
    CirclePoint,
    Configuration,
    FlatCoord,
    PhysPath,
    circle_point,
    config_dist,
    configuration,
    dist_gamma,
    parse_position,
)
from .planner import InstructionDomain, Plan, classify_domain, plan, plan_to_json, validate_plan
from .render import RenderSpec, render_svg
from .retraction import retract
from .spine import ChainPoint, build_chain, chain_point, dist_chain, vertex_point
from .verify import SuiteReport, continuity_probe, cycle_rank, run_suite, tc_wedge

__version__ = "0.1.0"

__all__ = [
    "CirclePoint",
    "ChainPoint",
    "CollisionError",
    "Configuration",
    "ContractError",
    "DomainError",
    "FlatCoord",
    "InstructionDomain",
    "Plan",
    "PhysPath",
    "RenderSpec",
    "SingularityError",
    "SuiteReport",
    "build_chain",
    "chain_point",
    "circle_point",
    "classify_domain",
    "config_dist",
    "configuration",
    "continuity_probe",
    "cycle_rank",
    "dist_chain",
    "dist_gamma",
    "parse_position",
    "plan",
    "plan_to_json",
    "render_svg",
    "retract",
    "run_suite",
    "tc_wedge",
    "validate_plan",
    "vertex_point",
]
