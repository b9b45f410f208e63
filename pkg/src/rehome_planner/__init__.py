"""Core-network re-homing planner.

Forecasts per-switch utilization under subscriber growth, validates and
evaluates controller re-homing scenarios against the nine source/target
models and their distribution principles, prices avoided expansions, searches
for cost-minimal move plans, and generates the ordered cutover runbook.
"""

from .config import PlannerConfig, Prices
from .costing import (
    CostReport,
    ExpansionPlan,
    compare_futures,
    new_switches_needed,
    trunks_needed,
    trunks_per_new_switch,
)
from .errors import PlannerError
from .forecast import (
    Phase,
    Ss7Model,
    SubscriberForecast,
    TrafficModel,
    UtilizationSeries,
    build_utilization_series,
    erlang_b_blocking,
    erlang_b_required_lines,
    forecast_bhca,
    forecast_ss7,
    forecast_traffic,
    forecast_trunks,
)
from .optimizer import OptimizationRequest, OptimizationResult, enumerate_candidates, optimize
from .rehoming import (
    ModelClassification,
    RehomingScenario,
    TrafficDelta,
    build_scenario,
    classify,
    compute_deltas,
    forecast_after,
    validate_scenario,
)
from .runbook import RunbookStep, generate_runbook, simulate_runbook
from .topology import (
    ControllerNode,
    Market,
    Mss,
    NetworkTopology,
    SwitchCapacity,
    SwitchNode,
    load_topology,
    switches_in_market,
    validate_topology,
)

__version__ = "0.1.0"

__all__ = [
    "PlannerConfig",
    "Prices",
    "CostReport",
    "ExpansionPlan",
    "compare_futures",
    "new_switches_needed",
    "trunks_needed",
    "trunks_per_new_switch",
    "PlannerError",
    "Phase",
    "Ss7Model",
    "SubscriberForecast",
    "TrafficModel",
    "UtilizationSeries",
    "build_utilization_series",
    "erlang_b_blocking",
    "erlang_b_required_lines",
    "forecast_bhca",
    "forecast_ss7",
    "forecast_traffic",
    "forecast_trunks",
    "OptimizationRequest",
    "OptimizationResult",
    "enumerate_candidates",
    "optimize",
    "ModelClassification",
    "RehomingScenario",
    "TrafficDelta",
    "build_scenario",
    "classify",
    "compute_deltas",
    "forecast_after",
    "validate_scenario",
    "RunbookStep",
    "generate_runbook",
    "simulate_runbook",
    "ControllerNode",
    "Market",
    "Mss",
    "NetworkTopology",
    "SwitchCapacity",
    "SwitchNode",
    "load_topology",
    "switches_in_market",
    "validate_topology",
]
