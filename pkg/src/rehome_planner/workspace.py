"""File-backed workspace store for planning sessions.

One JSON file per workspace. Saves are atomic (write to a temp file in the
same directory, fsync, rename over the old file) so a reader only ever sees
complete old or complete new bytes. A per-workspace advisory lock file
serializes writers; reads take no locks.
"""

from __future__ import annotations

import fcntl
import json
import os
import tempfile
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .config import PlannerConfig, config_from_dict, config_to_dict
from .errors import InputError, NotFoundError, ScenarioInvalidError, StorageError
from .forecast import SubscriberForecast, forecasts_from_list, forecasts_to_list
from .rehoming import scenario_from_dict, validate_scenario
from .topology import (
    NetworkTopology,
    topology_from_dict,
    topology_to_dict,
    validate_against_schema,
)

WORKSPACE_DIR_ENV = "PLANNER_WORKSPACE_DIR"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class Workspace:
    id: str
    topology: NetworkTopology
    forecasts: dict[str, SubscriberForecast]
    config: PlannerConfig
    scenarios: dict[str, dict] = field(default_factory=dict)
    results: dict[str, dict] = field(default_factory=dict)
    created_at: str = field(default_factory=_now)
    modified_at: str = field(default_factory=_now)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "created_at": self.created_at,
            "modified_at": self.modified_at,
            "topology": topology_to_dict(self.topology),
            "forecasts": forecasts_to_list(self.forecasts),
            "config": config_to_dict(self.config),
            "scenarios": self.scenarios,
            "results": self.results,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Workspace":
        return cls(
            id=doc["id"],
            topology=topology_from_dict(doc["topology"]),
            forecasts=forecasts_from_list(doc["forecasts"]),
            config=config_from_dict(doc["config"]),
            scenarios=dict(doc.get("scenarios", {})),
            results=dict(doc.get("results", {})),
            created_at=doc.get("created_at", _now()),
            modified_at=doc.get("modified_at", _now()),
        )

    def save_scenario(self, scenario_doc: dict) -> str:
        """Store a scenario after checking it against the topology snapshot."""
        scenario = scenario_from_dict(scenario_doc, self.topology)
        violations = validate_scenario(scenario, self.topology)
        if violations:
            raise ScenarioInvalidError(violations)
        scenario_id = uuid.uuid4().hex[:12]
        self.scenarios[scenario_id] = scenario_doc
        self.modified_at = _now()
        return scenario_id

    def save_result(self, result_doc: dict) -> str:
        result_id = uuid.uuid4().hex[:12]
        self.results[result_id] = result_doc
        self.modified_at = _now()
        return result_id


def new_workspace(
    topology_doc: dict,
    forecast_doc: list,
    config_doc: dict | None = None,
    workspace_id: str | None = None,
) -> Workspace:
    validate_against_schema(forecast_doc, "forecast")
    return Workspace(
        id=workspace_id or uuid.uuid4().hex[:12],
        topology=topology_from_dict(topology_doc),
        forecasts=forecasts_from_list(forecast_doc),
        config=config_from_dict(config_doc or {}),
    )


class WorkspaceStore:
    """Directory of workspace files, one ``<id>.json`` each."""

    def __init__(self, directory: str | Path | None = None):
        if directory is None:
            directory = os.environ.get(WORKSPACE_DIR_ENV, "./workspaces")
        self.directory = Path(directory)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageError(f"cannot create workspace directory {self.directory}: {exc}") from None

    def _path(self, workspace_id: str) -> Path:
        if not workspace_id.replace("-", "").replace("_", "").isalnum():
            raise InputError(f"invalid workspace id: {workspace_id}")
        return self.directory / f"{workspace_id}.json"

    def save(self, workspace: Workspace) -> Path:
        """Atomic replace under the workspace's advisory writer lock."""
        path = self._path(workspace.id)
        lock_path = path.with_suffix(".lock")
        payload = json.dumps(workspace.to_dict(), indent=2, sort_keys=True)
        try:
            with open(lock_path, "w") as lock_file:
                fcntl.flock(lock_file, fcntl.LOCK_EX)
                fd, tmp_name = tempfile.mkstemp(
                    dir=self.directory, prefix=f".{workspace.id}.", suffix=".tmp"
                )
                try:
                    with os.fdopen(fd, "w") as tmp:
                        tmp.write(payload)
                        tmp.flush()
                        os.fsync(tmp.fileno())
                    os.replace(tmp_name, path)
                finally:
                    if os.path.exists(tmp_name):
                        os.unlink(tmp_name)
        except OSError as exc:
            raise StorageError(f"cannot save workspace to {path}: {exc}") from None
        return path

    def load(self, workspace_id: str) -> Workspace:
        path = self._path(workspace_id)
        if not path.exists():
            raise NotFoundError(f"unknown workspace: {workspace_id}")
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise StorageError(f"cannot read workspace {path}: {exc}") from None
        return Workspace.from_dict(doc)

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def delete(self, workspace_id: str) -> None:
        path = self._path(workspace_id)
        if path.exists():
            path.unlink()
