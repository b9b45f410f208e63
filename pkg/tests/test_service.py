import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from rehome_planner.cli import main as cli_main
from rehome_planner.service import create_app
from rehome_planner.workspace import WorkspaceStore


@pytest.fixture
def demo_docs(demo_dir):
    return {
        "topology": json.loads((demo_dir / "topology.json").read_text()),
        "forecasts": json.loads((demo_dir / "forecast.json").read_text()),
        "config": json.loads((demo_dir / "config.json").read_text()),
    }


@pytest.fixture
def client(tmp_path):
    store = WorkspaceStore(tmp_path / "ws")
    return TestClient(create_app(store))


@pytest.fixture
def workspace_id(client, demo_docs):
    response = client.post("/workspaces", json=demo_docs)
    assert response.status_code == 201
    return response.json()["id"]


class TestWorkspaces:
    def test_create_returns_full_document(self, client, demo_docs):
        response = client.post("/workspaces", json=demo_docs)
        doc = response.json()
        assert response.status_code == 201
        assert doc["topology_violations"] == []
        assert {s["switch_id"] for s in doc["forecasts"]} == {"MGW-A1", "MGW-A2", "MGW-B1"}

    def test_get_round_trip(self, client, workspace_id):
        response = client.get(f"/workspaces/{workspace_id}")
        assert response.status_code == 200
        assert response.json()["id"] == workspace_id

    def test_unknown_workspace_404(self, client):
        response = client.get("/workspaces/zzz999")
        assert response.status_code == 404
        assert response.json()["code"] == "not-found"

    def test_missing_topology_400(self, client):
        response = client.post("/workspaces", json={"forecasts": []})
        assert response.status_code == 400
        assert response.json()["code"] == "bad-request"

    def test_list_workspaces(self, client, workspace_id):
        response = client.get("/workspaces")
        assert workspace_id in [w["id"] for w in response.json()["workspaces"]]


class TestEvaluate:
    def test_case_study_numbers(self, client, workspace_id, demo_scenario_doc):
        response = client.post(f"/workspaces/{workspace_id}/evaluate", json=demo_scenario_doc)
        assert response.status_code == 200
        doc = response.json()
        assert doc["classification"]["model_number"] == 1
        after_a1 = next(s for s in doc["after"] if s["switch_id"] == "MGW-A1")
        assert after_a1["months"][5]["trunks"] == 920.0
        assert doc["cost_report"]["savings"] == 190000.0

    def test_same_mss_target_returns_200_with_violation(self, client, workspace_id):
        body = {
            "moved_controllers": ["RNC-100"],
            "target_switch_ids": ["MGW-A2"],
            "rehoming_month": 5,
        }
        response = client.post(f"/workspaces/{workspace_id}/evaluate", json=body)
        assert response.status_code == 200
        doc = response.json()
        assert "same-mss-target" in [v["rule"] for v in doc["violations"]]
        assert doc["before"] is None

    def test_unknown_controller_404(self, client, workspace_id):
        body = {"moved_controllers": ["nope"], "target_switch_ids": ["MGW-B1"], "rehoming_month": 1}
        response = client.post(f"/workspaces/{workspace_id}/evaluate", json=body)
        assert response.status_code == 404

    def test_malformed_body_400(self, client, workspace_id):
        response = client.post(f"/workspaces/{workspace_id}/evaluate", json={"months": 3})
        assert response.status_code == 400

    def test_matches_cli_output_structurally(self, client, workspace_id, demo_dir, demo_scenario_doc):
        api_doc = client.post(f"/workspaces/{workspace_id}/evaluate", json=demo_scenario_doc).json()
        runner = CliRunner()
        result = runner.invoke(
            cli_main,
            [
                "evaluate",
                "--topology", str(demo_dir / "topology.json"),
                "--forecast", str(demo_dir / "forecast.json"),
                "--config", str(demo_dir / "config.json"),
                "--scenario", str(demo_dir / "scenario.json"),
                "--json",
            ],
        )
        cli_doc = json.loads(result.output)
        assert cli_doc == api_doc

    def test_valid_scenario_persisted(self, client, workspace_id, demo_scenario_doc):
        client.post(f"/workspaces/{workspace_id}/evaluate", json=demo_scenario_doc)
        ws = client.get(f"/workspaces/{workspace_id}").json()
        assert demo_scenario_doc in list(ws["scenarios"].values())


class TestPlanAndRunbook:
    def test_plan_endpoint(self, client, workspace_id):
        response = client.post(f"/workspaces/{workspace_id}/plan", json={})
        assert response.status_code == 200
        doc = response.json()
        assert doc["cost_report"]["savings"] == 190000.0
        assert doc["plan_id"]

    def test_infeasible_plan_is_still_200(self, client, workspace_id):
        # demo post-move December runs over the 0.8 threshold: a result, not an error
        response = client.post(f"/workspaces/{workspace_id}/plan", json={"threshold": 0.5})
        assert response.status_code == 200
        assert response.json()["feasible"] is False

    def test_runbook_endpoints(self, client, workspace_id):
        plan_id = client.post(f"/workspaces/{workspace_id}/plan", json={}).json()["plan_id"]
        response = client.get(f"/workspaces/{workspace_id}/runbooks/{plan_id}")
        assert response.status_code == 200
        steps = response.json()["runbooks"][0]["steps"]
        assert len(steps) == 20

        text = client.get(f"/workspaces/{workspace_id}/runbooks/{plan_id}", params={"format": "text"})
        assert text.status_code == 200
        assert "11. Move the switching connection" in text.text

    def test_unknown_plan_404(self, client, workspace_id):
        response = client.get(f"/workspaces/{workspace_id}/runbooks/none")
        assert response.status_code == 404


class TestStatelessness:
    def test_restart_loses_nothing_persisted(self, tmp_path, demo_docs, demo_scenario_doc):
        store_dir = tmp_path / "ws"
        first = TestClient(create_app(WorkspaceStore(store_dir)))
        wid = first.post("/workspaces", json=demo_docs).json()["id"]
        plan_id = first.post(f"/workspaces/{wid}/plan", json={}).json()["plan_id"]

        # a fresh app over the same directory serves the same data
        second = TestClient(create_app(WorkspaceStore(store_dir)))
        response = second.get(f"/workspaces/{wid}/runbooks/{plan_id}")
        assert response.status_code == 200
