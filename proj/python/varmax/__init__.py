"""Python bindings for the varmax library."""

import json

from ._varmax import (
    Error,
    HypothesisError,
    InvalidArgument,
    ModelSpace,
    ParseError,
    SolverError,
    certify_saddle,
    demo_json,
    demo_names,
    distance,
    jung_bound,
    jung_identity_check,
    run_scenario_json,
    solve_fictitious,
    solve_lp,
    squared_distance_payoff,
    welzl_meb,
)


def run_scenario(scenario):
    """Run a scenario given as a dict or JSON text and return the result dict."""
    text = scenario if isinstance(scenario, str) else json.dumps(scenario)
    return json.loads(run_scenario_json(text))


def demo(name):
    """Run a built-in demo scenario and return the result dict."""
    return json.loads(demo_json(name))


__all__ = [
    "Error",
    "HypothesisError",
    "InvalidArgument",
    "ModelSpace",
    "ParseError",
    "SolverError",
    "certify_saddle",
    "demo",
    "demo_names",
    "distance",
    "jung_bound",
    "jung_identity_check",
    "run_scenario",
    "solve_fictitious",
    "solve_lp",
    "squared_distance_payoff",
    "welzl_meb",
]
