"""Command-line entry points.

Exit codes: 0 success, 1 validation failures (topology or scenario
violations), 2 usage errors (bad flags, unreadable or malformed files).
``--json`` switches any subcommand to machine output.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import PlannerConfig, load_config
from .errors import PlannerError
from .evaluation import baseline_series, evaluate_scenario
from .forecast import forecasts_from_list
from .optimizer import OBJECTIVES, OptimizationRequest, optimize
from .rehoming import build_scenario, scenario_from_dict
from .runbook import generate_runbook, runbook_to_text
from .topology import load_topology, validate_against_schema, validate_topology


def _read_json(path: str, kind: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read {kind} file {path}: {exc}")


def _load_inputs(topology_path, forecast_path=None, config_path=None):
    try:
        topology = load_topology(topology_path)
        forecasts = None
        if forecast_path:
            doc = _read_json(forecast_path, "forecast")
            validate_against_schema(doc, "forecast")
            forecasts = forecasts_from_list(doc)
        config = load_config(config_path) if config_path else PlannerConfig()
        return topology, forecasts, config
    except PlannerError as exc:
        raise click.UsageError(str(exc))


def _emit(doc: dict, as_json: bool, human):
    if as_json:
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    else:
        human(doc)


@click.group()
def main():
    """Core-network re-homing planner."""


@main.command()
@click.option("--topology", "topology_path", required=True, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def validate(topology_path, as_json):
    """Check a topology file against every structural rule."""
    topology, _, _ = _load_inputs(topology_path)
    violations = [v.to_dict() for v in validate_topology(topology)]
    doc = {"violations": violations, "ok": not violations}

    def human(d):
        if d["ok"]:
            click.echo("topology OK: no violations")
        else:
            for v in d["violations"]:
                click.echo(f"[{v['rule']}] {v['subject']}: {v['message']}")

    _emit(doc, as_json, human)
    sys.exit(0 if not violations else 1)


@main.command()
@click.option("--topology", "topology_path", required=True, type=click.Path(exists=True))
@click.option("--forecast", "forecast_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--switch", "switch_id", help="restrict output to one switch")
@click.option("--json", "as_json", is_flag=True)
def forecast(topology_path, forecast_path, config_path, switch_id, as_json):
    """Monthly utilization series (traffic, BHCA, trunks, SS7) before any move."""
    topology, forecasts, config = _load_inputs(topology_path, forecast_path, config_path)
    if switch_id is not None:
        if switch_id not in forecasts:
            raise click.UsageError(f"no forecast for switch {switch_id}")
        forecasts = {switch_id: forecasts[switch_id]}
    try:
        series = baseline_series(topology, forecasts, config)
    except PlannerError as exc:
        raise click.UsageError(str(exc))
    doc = {"series": [series[sid].to_dict() for sid in sorted(series)]}

    def human(d):
        for s in d["series"]:
            click.echo(f"switch {s['switch_id']} ({s['phase']})")
            click.echo(f"  {'month':>5} {'label':>8} {'erlang':>12} {'bhca':>12} {'trunks':>10} {'ss7':>8}")
            for m in s["months"]:
                label = m.get("label", "")
                click.echo(
                    f"  {m['n']:>5} {label:>8} {m['traffic_erlang']:>12.2f}"
                    f" {m['bhca']:>12.1f} {m['trunks']:>10.2f} {m['ss7_util']:>8.4f}"
                )

    _emit(doc, as_json, human)


@main.command()
@click.option("--topology", "topology_path", required=True, type=click.Path(exists=True))
@click.option("--forecast", "forecast_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--scenario", "scenario_path", required=True, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def evaluate(topology_path, forecast_path, config_path, scenario_path, as_json):
    """Classify and what-if one re-homing scenario: series, violations, cost."""
    topology, forecasts, config = _load_inputs(topology_path, forecast_path, config_path)
    scenario_doc = _read_json(scenario_path, "scenario")
    try:
        scenario = scenario_from_dict(scenario_doc, topology)
        doc = evaluate_scenario(topology, forecasts, config, scenario)
    except PlannerError as exc:
        raise click.UsageError(str(exc))

    def human(d):
        if d["violations"]:
            click.echo("scenario INVALID:")
            for v in d["violations"]:
                click.echo(f"  [{v['rule']}] {v['subject']}: {v['message']}")
            return
        c = d["classification"]
        click.echo(f"model {c['model_number']} ({c['source_kind']} -> {c['target_kind']})")
        for sid, month in d["recommended_rehoming_month"].items():
            when = f"month {month}" if month else "no breach in horizon"
            click.echo(f"recommended re-homing month for {sid}: {when}")
        cr = d["cost_report"]
        click.echo(
            f"cost without re-homing: {cr['cost_without_rehoming']:.2f}  "
            f"with: {cr['cost_with_rehoming']:.2f}  savings: {cr['savings']:.2f}"
        )
        for before, after in zip(d["before"], d["after"]):
            click.echo(f"switch {before['switch_id']}: trunks before -> after")
            for mb, ma in zip(before["months"], after["months"]):
                click.echo(f"  month {mb['n']:>3}: {mb['trunks']:>10.2f} -> {ma['trunks']:>10.2f}")

    _emit(doc, as_json, human)
    sys.exit(1 if doc["violations"] else 0)


@main.command()
@click.option("--topology", "topology_path", required=True, type=click.Path(exists=True))
@click.option("--forecast", "forecast_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--objective", type=click.Choice(OBJECTIVES), default="min_cost")
@click.option("--max-moves", type=int, default=1)
@click.option("--threshold", type=float, default=None, help="override config load_threshold")
@click.option("--horizon", type=int, default=None, help="restrict planning to the first N months")
@click.option("--out", "out_path", type=click.Path(), help="write the plan file here")
@click.option("--json", "as_json", is_flag=True)
def plan(topology_path, forecast_path, config_path, objective, max_moves, threshold, horizon, out_path, as_json):
    """Search for the cheapest move set that relieves overloaded switches."""
    topology, forecasts, config = _load_inputs(topology_path, forecast_path, config_path)
    try:
        request = OptimizationRequest(
            topology=topology,
            forecasts=forecasts,
            config=config,
            objective=objective,
            horizon=horizon,
            load_threshold=threshold,
            max_moves=max_moves,
        )
        result = optimize(request).to_dict()
    except PlannerError as exc:
        raise click.UsageError(str(exc))
    if out_path:
        Path(out_path).write_text(json.dumps(result, indent=2, sort_keys=True))

    def human(d):
        click.echo(f"backend: {d['backend']}  objective: {d['objective']} = {d['objective_value']}")
        click.echo(f"feasible under load threshold: {d['feasible']}")
        if not d["scenarios"]:
            click.echo("no moves needed")
        for s in d["scenarios"]:
            moved = ", ".join(s["moved_controllers"])
            targets = ", ".join(s["target_switch_ids"])
            click.echo(f"move {moved} -> {targets} in month {s['rehoming_month']}")
        cr = d["cost_report"]
        click.echo(
            f"cost without plan: {cr['cost_without_rehoming']:.2f}  "
            f"with plan: {cr['cost_with_rehoming']:.2f}  savings: {cr['savings']:.2f}"
        )

    _emit(result, as_json, human)


@main.command()
@click.option("--topology", "topology_path", required=True, type=click.Path(exists=True))
@click.option("--plan", "plan_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", type=click.Path(), help="write the runbook here")
@click.option("--json", "as_json", is_flag=True)
def runbook(topology_path, plan_path, out_path, as_json):
    """Emit the ordered cutover checklist for a saved plan."""
    topology, _, _ = _load_inputs(topology_path)
    plan_doc = _read_json(plan_path, "plan")
    runbooks = []
    try:
        for sdoc in plan_doc.get("scenarios", []):
            scenario = build_scenario(
                topology,
                moved_controllers=sdoc["moved_controllers"],
                target_switch_ids=sdoc["target_switch_ids"],
                rehoming_month=sdoc["rehoming_month"],
            )
            steps = generate_runbook(scenario, topology)
            runbooks.append(
                {"scenario": scenario.to_dict(), "steps": [s.to_dict() for s in steps]}
            )
    except (PlannerError, KeyError) as exc:
        raise click.UsageError(f"plan file unusable: {exc}")
    doc = {"runbooks": runbooks}

    def human(d):
        from .service import _step_from_dict

        for rb in d["runbooks"]:
            moved = ", ".join(rb["scenario"]["moved_controllers"])
            click.echo(f"# Re-homing runbook for {moved}")
            click.echo(runbook_to_text([_step_from_dict(s) for s in rb["steps"]]))

    if out_path:
        Path(out_path).write_text(json.dumps(doc, indent=2, sort_keys=True))
    _emit(doc, as_json, human)


@main.command()
@click.option("--workspace-dir", default=None, help="workspace store directory (or PLANNER_WORKSPACE_DIR)")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8080)
def serve(workspace_dir, host, port):
    """Run the HTTP JSON API (and the what-if UI when built)."""
    from .service import serve as run_server

    run_server(workspace_dir, host=host, port=port)


if __name__ == "__main__":
    main()
