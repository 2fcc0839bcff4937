"""Safe-point consensus toolkit.

Point sets are n x d numpy arrays; scenario configs and trajectory logs are
the same JSON/CSV strings the command line tool reads and writes.
"""

from ._core import (
    approx_tverberg,
    config_hash,
    depth,
    exact_centerpoint,
    generate_scenario,
    iterated_radon_centerpoint,
    oracle_depth,
    oracle_in_hull,
    oracle_safe_point_exists,
    radon_depth_bound,
    resilience_bound,
    resilience_condition,
    run_scenario,
    scenario_names,
    tverberg_parts_bound,
    tverberg_safe_point,
    verify_trajectory,
)

__version__ = "0.1.0"

__all__ = [
    "approx_tverberg",
    "config_hash",
    "depth",
    "exact_centerpoint",
    "generate_scenario",
    "iterated_radon_centerpoint",
    "oracle_depth",
    "oracle_in_hull",
    "oracle_safe_point_exists",
    "radon_depth_bound",
    "resilience_bound",
    "resilience_condition",
    "run_scenario",
    "scenario_names",
    "tverberg_parts_bound",
    "tverberg_safe_point",
    "verify_trajectory",
]
