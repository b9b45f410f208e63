"""Scenario evaluation pipeline shared by the CLI, the HTTP API and the optimizer.

Produces the full what-if document for a proposed move: classification,
principle violations, before/after utilization series for every affected
switch, per-switch and aggregate cost comparison, and the recommended
re-homing month per source switch.
"""

from __future__ import annotations

from decimal import Decimal

from .config import PlannerConfig
from .costing import CostReport, compare_futures
from .errors import InputError
from .forecast import SubscriberForecast, UtilizationSeries, build_utilization_series
from .rehoming import (
    DeltaEvent,
    RehomingScenario,
    classify,
    compute_deltas,
    forecast_after_events,
    recommend_rehoming_month,
    validate_scenario,
)
from .topology import NetworkTopology


def baseline_series(
    topology: NetworkTopology,
    forecasts: dict[str, SubscriberForecast],
    config: PlannerConfig,
    horizon: int | None = None,
) -> dict[str, UtilizationSeries]:
    """Before-re-homing series for every switch that has a forecast."""
    out: dict[str, UtilizationSeries] = {}
    for sid in sorted(forecasts):
        fc = forecasts[sid]
        if horizon is not None:
            fc = SubscriberForecast(
                switch_id=fc.switch_id,
                months=tuple(mv for mv in fc.months if mv.n <= horizon),
            )
        out[sid] = build_utilization_series(
            fc, config.traffic_model, config.ss7_model, config.trunk_sizing
        )
    return out


def delta_events_by_switch(
    scenarios: list[RehomingScenario], topology: NetworkTopology
) -> dict[str, list[DeltaEvent]]:
    """Collect every scenario's per-switch deltas, keyed by switch."""
    events: dict[str, list[DeltaEvent]] = {}
    for scenario in scenarios:
        for delta in compute_deltas(scenario, topology):
            events.setdefault(delta.switch_id, []).append(
                DeltaEvent(
                    effective_month=scenario.effective_month,
                    erlang_delta=delta.erlang_delta,
                    trunk_delta=delta.trunk_delta,
                )
            )
    return events


def after_series_for_plan(
    baselines: dict[str, UtilizationSeries],
    scenarios: list[RehomingScenario],
    topology: NetworkTopology,
    config: PlannerConfig,
) -> dict[str, UtilizationSeries]:
    """Post-plan series for every switch with a baseline (unaffected ones pass through)."""
    events = delta_events_by_switch(scenarios, topology)
    affected = set(events)
    missing = sorted(affected - set(baselines))
    if missing:
        raise InputError(f"no forecast for affected switches: {', '.join(missing)}")
    out: dict[str, UtilizationSeries] = {}
    for sid, series in baselines.items():
        out[sid] = forecast_after_events(series, events.get(sid, []), config.ss7_model)
    return out


def aggregate_cost_report(reports: list[CostReport]) -> dict:
    """Sum per-switch cost comparisons into one plan-level report."""
    zero = Decimal("0.00")
    cost_without = sum((r.cost_without_rehoming for r in reports), zero)
    cost_with = sum((r.cost_with_rehoming for r in reports), zero)
    doc = {
        "cost_without_rehoming": float(cost_without),
        "cost_with_rehoming": float(cost_with),
        "savings": float(cost_without - cost_with),
        "per_switch": [r.to_dict() for r in reports],
    }
    if reports:
        doc["trunk_unit_price"] = float(reports[0].trunk_unit_price)
        doc["switch_unit_price"] = float(reports[0].switch_unit_price)
    return doc


def evaluate_scenario(
    topology: NetworkTopology,
    forecasts: dict[str, SubscriberForecast],
    config: PlannerConfig,
    scenario: RehomingScenario,
) -> dict:
    """The full evaluation document for one scenario.

    Violations short-circuit: an invalid move reports its violations with all
    numeric sections null rather than failing.
    """
    violations = validate_scenario(scenario, topology)
    doc: dict = {
        "scenario": scenario.to_dict(),
        "violations": [v.to_dict() for v in violations],
        "classification": None,
        "deltas": None,
        "before": None,
        "after": None,
        "cost_report": None,
        "recommended_rehoming_month": None,
    }
    if violations:
        return doc

    classification = classify(scenario, topology)
    deltas = compute_deltas(scenario, topology)

    affected = sorted(scenario.source_switch_ids | scenario.target_switch_ids)
    missing = [sid for sid in affected if sid not in forecasts]
    if missing:
        raise InputError(f"no forecast for affected switches: {', '.join(missing)}")

    before = {
        sid: build_utilization_series(
            forecasts[sid], config.traffic_model, config.ss7_model, config.trunk_sizing
        )
        for sid in affected
    }
    after = after_series_for_plan(before, [scenario], topology, config)

    reports = [
        compare_futures(
            before[sid],
            after[sid],
            topology.switch(sid).capacity,
            config.prices,
            n_existing=1,
            redundancy_applied_in_forecast=config.redundancy_applied_in_forecast,
        )
        for sid in affected
    ]

    recommended = {
        sid: recommend_rehoming_month(before[sid], topology.switch(sid).capacity)
        for sid in sorted(scenario.source_switch_ids)
    }

    doc.update(
        {
            "classification": classification.to_dict(),
            "deltas": [d.to_dict() for d in deltas],
            "before": [before[sid].to_dict() for sid in affected],
            "after": [after[sid].to_dict() for sid in affected],
            "cost_report": aggregate_cost_report(reports),
            "recommended_rehoming_month": recommended,
        }
    )
    return doc
