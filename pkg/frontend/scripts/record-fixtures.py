#!/usr/bin/env python3
"""Record real API responses into frontend/test/fixtures/.

Runs the planner service in-process against the demo workspace and freezes
the documents the UI tests diff rendered output against. Re-run after any
engine change that affects the wire formats:

    python frontend/scripts/record-fixtures.py
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from rehome_planner.service import create_app
from rehome_planner.workspace import WorkspaceStore

ROOT = Path(__file__).resolve().parent.parent.parent
DEMO = ROOT / "demo"
OUT = ROOT / "frontend" / "test" / "fixtures"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        client = TestClient(create_app(WorkspaceStore(tmp)))
        payload = {
            "topology": json.loads((DEMO / "topology.json").read_text()),
            "forecasts": json.loads((DEMO / "forecast.json").read_text()),
            "config": json.loads((DEMO / "config.json").read_text()),
        }
        wid = client.post("/workspaces", json=payload).json()["id"]

        workspace = client.get(f"/workspaces/{wid}").json()

        scenario = json.loads((DEMO / "scenario.json").read_text())
        evaluate_ok = client.post(f"/workspaces/{wid}/evaluate", json=scenario).json()

        same_mss = {
            "moved_controllers": ["RNC-100"],
            "target_switch_ids": ["MGW-A2"],
            "rehoming_month": 5,
        }
        evaluate_same_mss = client.post(f"/workspaces/{wid}/evaluate", json=same_mss).json()

        plan = client.post(f"/workspaces/{wid}/plan", json={}).json()
        runbook = client.get(f"/workspaces/{wid}/runbooks/{plan['plan_id']}").json()
        runbook_text = client.get(
            f"/workspaces/{wid}/runbooks/{plan['plan_id']}", params={"format": "text"}
        ).text

    for name, doc in [
        ("workspace", workspace),
        ("evaluate_ok", evaluate_ok),
        ("evaluate_same_mss", evaluate_same_mss),
        ("plan", plan),
        ("runbook", runbook),
    ]:
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2, sort_keys=True))
    (OUT / "runbook.txt").write_text(runbook_text)
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
