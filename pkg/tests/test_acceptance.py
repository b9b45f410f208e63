"""Acceptance suite.

One test per acceptance criterion, each printing a PASS/FAIL line (run with
``pytest tests/test_acceptance.py -s`` to see them). Tolerances and runtime
budgets are pinned here and nowhere else.
"""

import json
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from helpers import (
    cap,
    controller,
    erlang_b_oracle,
    forecast_for,
    invalid_fixture,
    mgw,
    model_fixture,
    random_topology,
    topo,
)
from rehome_planner.config import PlannerConfig
from rehome_planner.costing import (
    expansion_for_series,
    new_switches_needed,
    trunks_needed,
    trunks_per_new_switch,
)
from rehome_planner.errors import InfeasibleDeltaError, InvalidBaselineError
from rehome_planner.evaluation import evaluate_scenario
from rehome_planner.forecast import (
    Ss7Model,
    TrafficModel,
    build_utilization_series,
    erlang_b_blocking,
)
from rehome_planner.optimizer import OptimizationRequest, enumerate_candidates, optimize
from rehome_planner.rehoming import (
    classify,
    compute_deltas,
    recommend_rehoming_month,
    scenario_from_dict,
    validate_scenario,
)
from rehome_planner.runbook import (
    generate_runbook,
    is_linear_extension,
    is_terminal,
    simulate_runbook,
)
from rehome_planner.topology import ControllerKind, Market, Mss


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    print(f"ACCEPTANCE {name}: PASS")


def test_case_study_reproduction(demo_topology, demo_forecasts, demo_config, demo_scenario_doc):
    """Installed 1280 trunks at 85% headroom: May flags at 1090, the no-move
    future needs exactly 190 new trunks, the 200-trunk controller move turns
    June from 1120 into 920 with zero expansion."""
    with criterion("case-study-reproduction"):
        start = time.perf_counter()

        source = demo_topology.switch("MGW-A1")
        assert source.capacity.trunks_installed == 1280
        assert source.capacity.redundancy_factor == 0.85
        assert source.capacity.trunks_per_card == 1

        before = build_utilization_series(
            demo_forecasts["MGW-A1"],
            demo_config.traffic_model,
            demo_config.ss7_model,
            demo_config.trunk_sizing,
        )
        assert before.month(5).trunks == 1090.0
        assert 1090.0 >= 0.85 * 1280  # = 1088: the May breach
        assert recommend_rehoming_month(before, source.capacity) == 5

        # future without the re-homing: 190 new trunks, live before June
        expansion = expansion_for_series(
            before, source.capacity, redundancy_applied_in_forecast=True
        )
        assert expansion.trunks_to_add == 190
        assert expansion.month is not None and expansion.month < 6

        # future with the 200-trunk controller move
        scenario = scenario_from_dict(demo_scenario_doc, demo_topology)
        moved = demo_topology.controller("RNC-100")
        assert moved.trunks == 200
        doc = evaluate_scenario(demo_topology, demo_forecasts, demo_config, scenario)
        assert doc["violations"] == []
        after_a1 = next(s for s in doc["after"] if s["switch_id"] == "MGW-A1")
        before_a1 = next(s for s in doc["before"] if s["switch_id"] == "MGW-A1")
        assert before_a1["months"][5]["trunks"] == 1120.0
        assert after_a1["months"][5]["trunks"] == 920.0
        per_switch = {p["expansion_with"]["switch_id"]: p for p in doc["cost_report"]["per_switch"]}
        assert per_switch["MGW-A1"]["expansion_with"]["trunks_to_add"] == 0
        assert doc["cost_report"]["cost_with_rehoming"] == 0.0
        assert doc["cost_report"]["savings"] == 190 * 1000.0

        assert time.perf_counter() - start < 1.0


def test_erlang_b_against_direct_summation_oracle():
    """Recurrence vs exact-rational direct summation on a 100-point grid."""
    with criterion("erlang-b-oracle-grid"):
        start = time.perf_counter()
        assert erlang_b_blocking(1.0, 1) == 0.5
        offered_values = np.geomspace(0.1, 200.0, 10)
        line_values = np.linspace(1, 400, 10).round().astype(int)
        checked = 0
        for offered in offered_values:
            for lines in line_values:
                got = erlang_b_blocking(float(offered), int(lines))
                want = float(erlang_b_oracle(float(offered), int(lines)))
                assert abs(got - want) <= 1e-9 * max(want, 1e-300), (offered, lines)
                checked += 1
        assert checked == 100
        assert time.perf_counter() - start < 5.0


def test_after_forecast_two_form_equivalence():
    """Anchor-scaled call attempts equal the direct traffic/time form, 1000 draws."""
    with criterion("two-form-equivalence"):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            y1 = rng.uniform(1.0, 1e5)
            yn = rng.uniform(1.0, 1e5)
            t_seconds = rng.uniform(10.0, 600.0)
            n_switches = rng.integers(1, 7)
            delta = rng.uniform(-0.9 * yn, 2.0 * yn)
            share = delta / n_switches
            a1 = y1 * 3600.0 / t_seconds
            form_anchor = a1 * (yn + share) / y1
            form_direct = (yn + share) * 3600.0 / t_seconds
            denom = max(abs(form_direct), 1e-12)
            assert abs(form_anchor - form_direct) / denom <= 1e-9


def test_delta_conservation_500_scenarios():
    """Traffic and trunk deltas sum to zero over all switches, 500 scenarios."""
    with criterion("delta-conservation"):
        rng = random.Random(77)
        collected = 0
        attempts = 0
        while collected < 500 and attempts < 400:
            attempts += 1
            topology = random_topology(rng, tag=str(attempts))
            for scenario in enumerate_candidates(topology):
                deltas = compute_deltas(scenario, topology)
                assert abs(sum(d.erlang_delta for d in deltas)) <= 1e-9
                assert abs(sum(d.trunk_delta for d in deltas)) <= 1e-9
                collected += 1
                if collected == 500:
                    break
        assert collected == 500


def test_model_classification_13_of_13():
    """Nine shape fixtures classify to their numbers; four bad shapes are
    rejected with the right named violation."""
    with criterion("model-classification"):
        passed = 0
        for number in range(1, 10):
            topology, scenario = model_fixture(number)
            assert validate_scenario(scenario, topology) == []
            assert classify(scenario, topology).model_number == number
            passed += 1
        for name in (
            "same-mss-target",
            "cross-market-target",
            "partial-target-set",
            "mixed-kind-source",
        ):
            topology, scenario, expected_rule = invalid_fixture(name)
            rules = [v.rule for v in validate_scenario(scenario, topology)]
            assert expected_rule in rules, name
            passed += 1
        assert passed == 13


def test_runbook_canonical_and_1000_permutations():
    """Canonical order reaches the terminal state; a permutation is accepted
    exactly when it extends the dependency DAG, and every accepted permutation
    lands in the identical terminal state."""
    with criterion("runbook-permutations"):
        topology, scenario = model_fixture(2)
        steps = generate_runbook(scenario, topology)
        canonical = simulate_runbook(steps)
        assert canonical.ok
        assert is_terminal(canonical.final_state)

        rng = random.Random(1234)
        accepted = 0
        for i in range(1000):
            order = steps.copy()
            if i > 0:
                rng.shuffle(order)
            result = simulate_runbook(order)
            assert result.ok == is_linear_extension(order)
            if result.ok:
                accepted += 1
                assert result.final_state == canonical.final_state
        assert accepted >= 1


def _small_instance(rng: random.Random, tag: str):
    """At most 3 switches and 6 controllers, each switch with a 6-month plan."""
    n_switch = rng.randint(2, 3)
    mss_nodes = []
    switches = []
    for i in range(n_switch):
        mss_id = f"MS{tag}{i}"
        gid = f"G{tag}{i}"
        mss_nodes.append(Mss(mss_id, frozenset({gid})))
        switches.append(
            mgw(
                gid,
                f"mk{tag}",
                mss_id,
                cap(
                    trunks_installed=1280,
                    trunks_per_card=rng.choice([1, 8, 16]),
                    redundancy_factor=0.85,
                ),
            )
        )
    controllers = []
    for i in range(rng.randint(1, 6)):
        home = rng.choice(switches)
        trunks = rng.randint(20, 250)
        controllers.append(
            controller(
                f"c{tag}{i}",
                ControllerKind.RNC,
                {home.id},
                trunks=trunks,
                erlang=trunks * 15.0 * rng.uniform(0.4, 0.9),
            )
        )
    topology = topo([Market(f"mk{tag}", "market")], mss_nodes, switches, controllers)
    forecasts = {}
    for sw in switches:
        base = rng.randint(600, 1300)
        growth = rng.randint(0, 90)
        forecasts[sw.id] = forecast_for(sw.id, [base + growth * k for k in range(6)])
    return topology, forecasts


def test_optimizer_greedy_vs_exhaustive_oracle():
    """On 20 small instances the exhaustive optimum never exceeds the greedy
    objective; gaps are logged; the exhaustive result re-evaluates to itself."""
    with criterion("optimizer-oracle-equivalence"):
        start = time.perf_counter()
        rng = random.Random(404)
        config = PlannerConfig(
            traffic_model=TrafficModel(
                erlang_per_subscriber=0.03125, mean_call_seconds=90, channel_loading=0.625
            ),
            ss7_model=Ss7Model(link_count=96),
        )
        gaps = []
        for i in range(20):
            topology, forecasts = _small_instance(rng, tag=str(i))
            exhaustive = optimize(
                OptimizationRequest(
                    topology=topology, forecasts=forecasts, config=config, max_moves=2
                )
            )
            greedy = optimize(
                OptimizationRequest(
                    topology=topology,
                    forecasts=forecasts,
                    config=config,
                    max_moves=2,
                    exhaustive_bound=0,
                )
            )
            assert exhaustive.backend == "exhaustive"
            assert greedy.backend == "greedy"
            assert exhaustive.objective_value <= greedy.objective_value + 1e-9
            assert exhaustive.objective_value == exhaustive.revalidated_objective_value
            gap = greedy.objective_value - exhaustive.objective_value
            if gap > 0:
                gaps.append((i, gap))
        for i, gap in gaps:
            print(f"  instance {i}: greedy gap over exhaustive optimum = {gap}")
        assert time.perf_counter() - start < 30.0


def test_expansion_formula_unit_vectors():
    """Every pinned expansion-sizing example reproduces in integer arithmetic."""
    with criterion("expansion-unit-vectors"):
        c1 = cap(trunks_installed=1280, trunks_max=2000, trunks_per_card=1, redundancy_factor=1.0)
        assert trunks_needed(1470, c1) == 190
        c16 = cap(trunks_installed=1280, trunks_max=2000, trunks_per_card=16, redundancy_factor=1.0)
        assert trunks_needed(1470, c16) == 192
        c85 = cap(trunks_installed=1280, trunks_max=2000, trunks_per_card=1, redundancy_factor=0.85)
        assert trunks_needed(1088, c85) == 0

        assert new_switches_needed(192, c85, n_existing=1) == 0
        assert new_switches_needed(3220, c85, n_existing=1) == 2  # total 4500 over 2000-max
        assert new_switches_needed(0, c85, n_existing=1) == 0

        spread, feasible = trunks_per_new_switch(3220, c85, n_existing=1, n_new=2)
        assert spread == 1500.0 and feasible
        spread, feasible = trunks_per_new_switch(100, c85, n_existing=1, n_new=0)
        assert spread == 1380.0
        spread, feasible = trunks_per_new_switch(3830, c85, n_existing=1, n_new=2)
        assert not feasible  # 5110/3 just over the 1700 per-switch headroom
