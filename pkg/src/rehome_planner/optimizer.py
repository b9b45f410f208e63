"""Search for re-homing plans that relieve overloaded switches cheaply.

Candidates are whole-controller moves onto every eligible in-market target
set (single MSC, or the full in-market MGW set of another MSS). A small
instance is solved exactly by enumerating move combinations; larger ones fall
back to a greedy best-move-per-round search. Both backends are deterministic:
candidates are ordered by controller id then target parent id, and ties keep
the earliest candidate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from decimal import Decimal

from .config import PlannerConfig
from .costing import compare_futures
from .errors import InfeasibleDeltaError, InputError, InvalidBaselineError
from .evaluation import after_series_for_plan, aggregate_cost_report, baseline_series
from .forecast import SubscriberForecast, UtilizationSeries
from .rehoming import (
    RehomingScenario,
    build_scenario,
    recommend_rehoming_month,
    validate_scenario,
)
from .topology import ControllerKind, NetworkTopology, SwitchKind, switches_in_market

OBJECTIVES = ("min_cost", "min_peak_utilization")


@dataclass(frozen=True)
class OptimizationRequest:
    topology: NetworkTopology
    forecasts: dict[str, SubscriberForecast]
    config: PlannerConfig
    objective: str = "min_cost"
    horizon: int | None = None
    load_threshold: float | None = None  # falls back to config.load_threshold
    max_moves: int = 1
    exhaustive_bound: int = 10000

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise InputError(f"objective must be one of {OBJECTIVES}")
        if self.max_moves < 0:
            raise InputError("max_moves must be >= 0")
        if self.horizon is not None and self.horizon < 1:
            raise InputError("horizon must be >= 1")

    @property
    def threshold(self) -> float:
        return self.load_threshold if self.load_threshold is not None else self.config.load_threshold


@dataclass
class SearchStats:
    candidates: int = 0
    combinations_examined: int = 0
    pruned: int = 0

    def to_dict(self) -> dict:
        return {
            "candidates": self.candidates,
            "combinations_examined": self.combinations_examined,
            "pruned": self.pruned,
        }


@dataclass
class OptimizationResult:
    backend: str
    objective: str
    objective_value: float
    feasible: bool
    scenarios: list[RehomingScenario]
    cost_report: dict
    peak_utilization: dict
    stats: SearchStats
    revalidated_objective_value: float = 0.0

    def to_dict(self) -> dict:
        return {
            "backend": self.backend,
            "objective": self.objective,
            "objective_value": self.objective_value,
            "revalidated_objective_value": self.revalidated_objective_value,
            "feasible": self.feasible,
            "scenarios": [s.to_dict() for s in self.scenarios],
            "cost_report": self.cost_report,
            "peak_utilization": self.peak_utilization,
            "stats": self.stats.to_dict(),
        }


def enumerate_candidates(
    topology: NetworkTopology, load_threshold: float = 0.8
) -> list[RehomingScenario]:
    """Every valid single-controller move, in deterministic order.

    Targets are either one in-market 2G MSC (BSC moves only) or the complete
    in-market MGW set of another MSS. Emitted scenarios all pass validation;
    execution months are placeholders for the optimizer to set.
    """
    candidates: list[RehomingScenario] = []
    for ctrl in sorted(topology.controllers, key=lambda c: c.id):
        source_switches = [topology.switch(s) for s in ctrl.homed_to]
        if not source_switches:
            continue
        markets = {s.market_id for s in source_switches}
        if len(markets) != 1:
            continue
        market_id = markets.pop()

        targets: list[tuple[str, frozenset[str]]] = []
        for mss in sorted(topology.mss, key=lambda m: m.id):
            in_market = switches_in_market(topology, mss.id, market_id)
            if in_market:
                targets.append((mss.id, frozenset(in_market)))
        if ctrl.kind is ControllerKind.BSC:
            for sw in sorted(topology.switches, key=lambda s: s.id):
                if sw.kind is SwitchKind.MSC_2G and sw.market_id == market_id:
                    targets.append((sw.id, frozenset({sw.id})))

        for _, target_set in sorted(targets, key=lambda t: t[0]):
            scenario = build_scenario(topology, [ctrl.id], sorted(target_set), rehoming_month=1)
            if not validate_scenario(scenario, topology):
                candidates.append(scenario)
    return candidates


def switch_peak_utilization(series: UtilizationSeries, topology: NetworkTopology) -> float:
    """Worst monthly utilization ratio against installed capacity."""
    cap = topology.switch(series.switch_id).capacity
    peak = 0.0
    for rec in series.months:
        for value, installed in (
            (rec.trunks, cap.trunks_installed),
            (rec.bhca, cap.bhca_installed),
            (rec.ss7_util, cap.ss7_installed),
        ):
            if installed > 0:
                peak = max(peak, value / installed)
            elif value > 0:
                peak = max(peak, float("inf"))
    return peak


@dataclass
class _PlanEvaluation:
    objective_key: object  # Decimal for min_cost, float for min_peak_utilization
    feasible: bool
    cost_report: dict
    peaks: dict[str, float]


class _Evaluator:
    """Evaluates move sets against fixed baselines; shared by both backends."""

    def __init__(self, request: OptimizationRequest):
        self.request = request
        self.topology = request.topology
        self.config = request.config
        self.baselines = baseline_series(
            self.topology, request.forecasts, self.config, request.horizon
        )

    def evaluate(self, scenarios: list[RehomingScenario]) -> _PlanEvaluation:
        after = after_series_for_plan(self.baselines, scenarios, self.topology, self.config)
        reports = [
            compare_futures(
                self.baselines[sid],
                after[sid],
                self.topology.switch(sid).capacity,
                self.config.prices,
                n_existing=1,
                redundancy_applied_in_forecast=self.config.redundancy_applied_in_forecast,
            )
            for sid in sorted(self.baselines)
        ]
        cost_report = aggregate_cost_report(reports)
        peaks = {
            sid: switch_peak_utilization(after[sid], self.topology) for sid in sorted(after)
        }
        feasible = all(p <= self.request.threshold for p in peaks.values())
        if self.request.objective == "min_cost":
            key = sum((r.cost_with_rehoming for r in reports), Decimal("0.00"))
        else:
            key = max(peaks.values(), default=0.0)
        return _PlanEvaluation(key, feasible, cost_report, peaks)


def _candidate_months(
    candidates: list[RehomingScenario],
    evaluator: _Evaluator,
    topology: NetworkTopology,
) -> list[RehomingScenario | None]:
    """Pin each candidate's execution month to its source's first breach month.

    Effects land the month after execution, matching the operational pattern
    of moving out the month the headroom limit is first hit. Sources that
    never breach execute in month 1. Candidates whose switches lack forecasts
    are dropped (None).
    """
    pinned: list[RehomingScenario | None] = []
    for cand in candidates:
        affected = cand.source_switch_ids | cand.target_switch_ids
        if any(sid not in evaluator.baselines for sid in affected):
            pinned.append(None)
            continue
        months = []
        for sid in sorted(cand.source_switch_ids):
            m = recommend_rehoming_month(
                evaluator.baselines[sid], topology.switch(sid).capacity
            )
            if m is not None:
                months.append(m)
        month = min(months) if months else 1
        pinned.append(
            RehomingScenario(
                moved_controllers=cand.moved_controllers,
                source_switch_ids=cand.source_switch_ids,
                target_switch_ids=cand.target_switch_ids,
                rehoming_month=month,
            )
        )
    return pinned


def _objective_float(key) -> float:
    return float(key)


def optimize(request: OptimizationRequest) -> OptimizationResult:
    """Pick the move set minimizing the objective.

    Exhaustive enumeration of move combinations runs when their count stays
    within ``exhaustive_bound``; otherwise a greedy best-move-per-round search
    runs. An infeasible outcome (some switch stays over the load threshold) is
    a result carrying the best-effort plan, not a failure.
    """
    evaluator = _Evaluator(request)
    raw_candidates = enumerate_candidates(request.topology, request.threshold)
    pinned = _candidate_months(raw_candidates, evaluator, request.topology)
    candidates = [c for c in pinned if c is not None]
    stats = SearchStats(candidates=len(raw_candidates), pruned=pinned.count(None))

    n_combos = sum(
        _count_combinations(len(candidates), k) for k in range(0, request.max_moves + 1)
    )
    use_exhaustive = n_combos <= request.exhaustive_bound

    if use_exhaustive:
        best_scenarios, best_eval = _search_exhaustive(candidates, evaluator, request, stats)
        backend = "exhaustive"
    else:
        best_scenarios, best_eval = _search_greedy(candidates, evaluator, request, stats)
        backend = "greedy"

    # re-evaluate the chosen plan from scratch; the reported objective must match
    recheck = _Evaluator(request).evaluate(best_scenarios)
    result = OptimizationResult(
        backend=backend,
        objective=request.objective,
        objective_value=_objective_float(best_eval.objective_key),
        revalidated_objective_value=_objective_float(recheck.objective_key),
        feasible=best_eval.feasible,
        scenarios=best_scenarios,
        cost_report=best_eval.cost_report,
        peak_utilization={
            "overall": max(best_eval.peaks.values(), default=0.0),
            "per_switch": best_eval.peaks,
            "load_threshold": request.threshold,
        },
        stats=stats,
    )
    return result


def _count_combinations(n: int, k: int) -> int:
    return math.comb(n, k) if k <= n else 0


def _compatible(scenarios: tuple[RehomingScenario, ...]) -> bool:
    moved: set[str] = set()
    for s in scenarios:
        for c in s.moved_controllers:
            if c in moved:
                return False
            moved.add(c)
    return True


def _search_exhaustive(
    candidates: list[RehomingScenario],
    evaluator: _Evaluator,
    request: OptimizationRequest,
    stats: SearchStats,
) -> tuple[list[RehomingScenario], _PlanEvaluation]:
    best_scenarios: list[RehomingScenario] = []
    best_eval = evaluator.evaluate([])
    stats.combinations_examined = 1
    for k in range(1, request.max_moves + 1):
        for combo in itertools.combinations(range(len(candidates)), k):
            chosen = tuple(candidates[i] for i in combo)
            if not _compatible(chosen):
                continue
            stats.combinations_examined += 1
            try:
                evaluation = evaluator.evaluate(list(chosen))
            except (InfeasibleDeltaError, InvalidBaselineError):
                # the move would drive some switch negative: not a real option
                stats.pruned += 1
                continue
            if evaluation.objective_key < best_eval.objective_key:
                best_scenarios, best_eval = list(chosen), evaluation
    return best_scenarios, best_eval


def _search_greedy(
    candidates: list[RehomingScenario],
    evaluator: _Evaluator,
    request: OptimizationRequest,
    stats: SearchStats,
) -> tuple[list[RehomingScenario], _PlanEvaluation]:
    chosen: list[RehomingScenario] = []
    current = evaluator.evaluate(chosen)
    stats.combinations_examined = 1
    moved: set[str] = set()
    while len(chosen) < request.max_moves:
        round_best = None
        round_eval = None
        for cand in candidates:
            if any(c in moved for c in cand.moved_controllers):
                continue
            stats.combinations_examined += 1
            try:
                evaluation = evaluator.evaluate(chosen + [cand])
            except (InfeasibleDeltaError, InvalidBaselineError):
                stats.pruned += 1
                continue
            if round_eval is None or evaluation.objective_key < round_eval.objective_key:
                round_best, round_eval = cand, evaluation
        if round_best is None or not round_eval.objective_key < current.objective_key:
            break
        chosen.append(round_best)
        moved.update(round_best.moved_controllers)
        current = round_eval
    return chosen, current
