"""Exception hierarchy shared by all planner modules."""

from __future__ import annotations


class PlannerError(Exception):
    """Base class for all planner failures."""


class InputError(PlannerError):
    """Malformed input file or request body (schema violation, bad month order, ...)."""


class NotFoundError(PlannerError):
    """A referenced id (market, switch, controller, workspace, plan) does not exist."""


class InvalidModelError(PlannerError):
    """A traffic/SS7 model parameter is out of its valid range."""


class InvalidBaselineError(PlannerError):
    """The before-series cannot anchor an after-forecast (month-1 traffic is zero)."""


class InfeasibleDeltaError(PlannerError):
    """Applying a re-homing delta would drive a monthly value below zero."""


class UnclassifiableScenarioError(PlannerError):
    """The scenario's source/target shape maps to none of the nine models."""

    def __init__(self, shape: str):
        super().__init__(f"unclassifiable re-homing shape: {shape}")
        self.shape = shape


class ScenarioInvalidError(PlannerError):
    """A scenario failed validation; carries the full violation list."""

    def __init__(self, violations):
        rules = ", ".join(v.rule for v in violations) or "unknown"
        super().__init__(f"scenario is invalid: {rules}")
        self.violations = list(violations)


class InvalidComparisonError(PlannerError):
    """Two utilization series do not cover the same months."""


class IncompletePlanError(PlannerError):
    """A plan lacks the node metadata needed to instantiate a runbook."""


class StorageError(PlannerError):
    """Workspace persistence failed; message includes the offending path."""
