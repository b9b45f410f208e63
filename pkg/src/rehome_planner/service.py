"""HTTP JSON API over the planning engine.

Endpoints mirror the file formats one-to-one; an evaluate response is
structurally identical to the CLI's ``evaluate --json`` output for the same
inputs. Invalid scenarios are results (HTTP 200 with violations), not errors;
only malformed bodies (400), unknown ids (404) and storage trouble (500) map
to error statuses, all shaped ``{code, message, violations?}``.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse

from .errors import (
    InputError,
    InvalidModelError,
    NotFoundError,
    PlannerError,
    ScenarioInvalidError,
    StorageError,
)
from .evaluation import evaluate_scenario
from .optimizer import OBJECTIVES, OptimizationRequest, optimize
from .rehoming import build_scenario, scenario_from_dict
from .runbook import generate_runbook, runbook_to_text
from .topology import validate_topology
from .workspace import WorkspaceStore, new_workspace

UI_DIST = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
UI_PUBLIC = Path(__file__).resolve().parent.parent.parent / "frontend" / "public"


def create_app(store: WorkspaceStore) -> FastAPI:
    app = FastAPI(title="rehome-planner", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "bad-request", "message": str(exc.errors()[:1])}
        )

    @app.exception_handler(PlannerError)
    async def planner_error(request: Request, exc: PlannerError):
        if isinstance(exc, NotFoundError):
            status, code = 404, "not-found"
        elif isinstance(exc, StorageError):
            status, code = 500, "storage-error"
        elif isinstance(exc, (InputError, InvalidModelError)):
            status, code = 400, "bad-request"
        else:
            status, code = 400, "bad-request"
        body = {"code": code, "message": str(exc)}
        if isinstance(exc, ScenarioInvalidError):
            body["violations"] = [v.to_dict() for v in exc.violations]
        return JSONResponse(status_code=status, content=body)

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.get("/workspaces")
    async def list_workspaces():
        out = []
        for wid in store.list_ids():
            ws = store.load(wid)
            out.append(
                {"id": ws.id, "created_at": ws.created_at, "modified_at": ws.modified_at}
            )
        return {"workspaces": out}

    @app.post("/workspaces", status_code=201)
    async def create_workspace(body: dict):
        for key in ("topology", "forecasts"):
            if key not in body:
                raise InputError(f"missing '{key}' in workspace upload")
        ws = new_workspace(body["topology"], body["forecasts"], body.get("config"))
        store.save(ws)
        doc = ws.to_dict()
        doc["topology_violations"] = [v.to_dict() for v in validate_topology(ws.topology)]
        return doc

    @app.get("/workspaces/{workspace_id}")
    async def get_workspace(workspace_id: str):
        ws = store.load(workspace_id)
        doc = ws.to_dict()
        doc["topology_violations"] = [v.to_dict() for v in validate_topology(ws.topology)]
        return doc

    @app.post("/workspaces/{workspace_id}/evaluate")
    async def evaluate(workspace_id: str, body: dict):
        ws = store.load(workspace_id)
        scenario = scenario_from_dict(body, ws.topology)
        doc = evaluate_scenario(ws.topology, ws.forecasts, ws.config, scenario)
        if not doc["violations"]:
            ws.save_scenario(body)
            store.save(ws)
        return doc

    @app.post("/workspaces/{workspace_id}/plan")
    async def plan(workspace_id: str, body: dict | None = None):
        body = body or {}
        ws = store.load(workspace_id)
        objective = body.get("objective", "min_cost")
        if objective not in OBJECTIVES:
            raise InputError(f"objective must be one of {OBJECTIVES}")
        request = OptimizationRequest(
            topology=ws.topology,
            forecasts=ws.forecasts,
            config=ws.config,
            objective=objective,
            horizon=body.get("horizon"),
            load_threshold=body.get("threshold"),
            max_moves=body.get("max_moves", 1),
        )
        result = optimize(request).to_dict()
        plan_id = ws.save_result(result)
        store.save(ws)
        return {"plan_id": plan_id, **result}

    @app.get("/workspaces/{workspace_id}/runbooks/{plan_id}")
    async def runbook(workspace_id: str, plan_id: str, format: str = "json"):
        ws = store.load(workspace_id)
        if plan_id not in ws.results:
            raise NotFoundError(f"unknown plan: {plan_id}")
        result = ws.results[plan_id]
        runbooks = []
        for sdoc in result.get("scenarios", []):
            scenario = build_scenario(
                ws.topology,
                moved_controllers=sdoc["moved_controllers"],
                target_switch_ids=sdoc["target_switch_ids"],
                rehoming_month=sdoc["rehoming_month"],
            )
            steps = generate_runbook(scenario, ws.topology)
            runbooks.append({"scenario": scenario.to_dict(), "steps": [s.to_dict() for s in steps]})
        if format == "text":
            blocks = []
            for rb in runbooks:
                moved = ", ".join(rb["scenario"]["moved_controllers"])
                blocks.append(f"# Re-homing runbook for {moved}")
                steps = [_step_from_dict(s) for s in rb["steps"]]
                blocks.append(runbook_to_text(steps))
            return PlainTextResponse("\n".join(blocks))
        return {"plan_id": plan_id, "runbooks": runbooks}

    if UI_DIST.is_dir() and UI_PUBLIC.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui/dist", StaticFiles(directory=UI_DIST), name="ui-dist")
        app.mount("/ui", StaticFiles(directory=UI_PUBLIC, html=True), name="ui")

    return app


def _step_from_dict(doc: dict):
    from .runbook import RunbookStep

    return RunbookStep(
        index=doc["index"],
        description=doc["description"],
        phase=doc["phase"],
        preconditions=tuple((p["field"], p["value"]) for p in doc["preconditions"]),
        effects=tuple((e["field"], e["value"]) for e in doc["effects"]),
        depends_on=tuple(doc["depends_on"]),
        adapted=doc["adapted"],
    )


def serve(workspace_dir: str | None, host: str = "127.0.0.1", port: int = 8080) -> None:
    import uvicorn

    store = WorkspaceStore(workspace_dir)
    uvicorn.run(create_app(store), host=host, port=port)
