"""Operational runbook for executing a planned re-homing.

The 20-step cutover procedure is data, not code: each step carries its state
predicates (preconditions), its state transitions (effects) and its explicit
dependency edges, so domain experts can amend the template without touching
the simulator. The procedure is written for 2G controller moves; controller
moves on the 3G side reuse the same skeleton with substituted entity names
and every step flagged ``adapted``.

The simulator replays a step order against a cutover state and reports the
first step whose preconditions fail, which makes any proposed reordering
checkable before it reaches an operations floor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IncompletePlanError
from .rehoming import RehomingScenario
from .topology import ControllerKind, NetworkTopology, SwitchKind

PHASE_PREPARATION = "preparation"
PHASE_CUTOVER = "cutover"
PHASE_COMPLETION = "completion"

# cutover state fields and their initial values
INITIAL_STATE = {
    "hardware_verified": False,
    "software_checked": False,
    "cell_data_copied": False,
    "site_data_copied": False,
    "ncell_data_copied": False,
    "new_ext_source": "absent",       # absent -> not_operating -> operating
    "new_ext_target": "absent",
    "old_ext_source": "operating",    # operating -> not_operating -> absent
    "old_ext_target": "operating",
    "cell_state": "operating",        # operating -> halted -> operating
    "trx": "active",                  # active -> blocked -> active
    "connection": "at_source",        # at_source -> at_target
    "cgi": "old_parent",              # old_parent -> new_parent
    "source_cell_data": True,         # residue removed during completion
    "source_site_data": True,
    "source_ncell_data": True,
}

TERMINAL_STATE = {
    "hardware_verified": True,
    "software_checked": True,
    "cell_data_copied": True,
    "site_data_copied": True,
    "ncell_data_copied": True,
    "new_ext_source": "operating",
    "new_ext_target": "operating",
    "old_ext_source": "absent",
    "old_ext_target": "absent",
    "cell_state": "operating",
    "trx": "active",
    "connection": "at_target",
    "cgi": "new_parent",
    "source_cell_data": False,
    "source_site_data": False,
    "source_ncell_data": False,
}


@dataclass(frozen=True)
class RunbookStep:
    index: int
    description: str
    phase: str
    preconditions: tuple[tuple[str, object], ...]  # (state field, required value)
    effects: tuple[tuple[str, object], ...]        # (state field, new value)
    depends_on: tuple[int, ...]
    adapted: bool = False

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "description": self.description,
            "phase": self.phase,
            "preconditions": [{"field": f, "value": v} for f, v in self.preconditions],
            "effects": [{"field": f, "value": v} for f, v in self.effects],
            "depends_on": list(self.depends_on),
            "adapted": self.adapted,
        }


# Template slots: {controller} moved node, {source}/{target} parent switches,
# {sites} subtended cell sites, {registry} switch holding the CGI records.
_STEP_TEMPLATE: list[dict] = [
    dict(
        index=1,
        description="Verify the hardware configuration of {target} against {source}",
        phase=PHASE_PREPARATION,
        pre=[],
        eff=[("hardware_verified", True)],
        deps=[],
    ),
    dict(
        index=2,
        description="Check that software versions registered for {sites} of {controller} are available at {target}",
        phase=PHASE_PREPARATION,
        pre=[],
        eff=[("software_checked", True)],
        deps=[],
    ),
    dict(
        index=3,
        description="Copy cell definitions for {controller} from {source} to {target}",
        phase=PHASE_PREPARATION,
        pre=[],
        eff=[("cell_data_copied", True)],
        deps=[],
    ),
    dict(
        index=4,
        description="Copy site definitions for {controller} from {source} to {target}",
        phase=PHASE_PREPARATION,
        pre=[],
        eff=[("site_data_copied", True)],
        deps=[],
    ),
    dict(
        index=5,
        description="Copy neighbor-cell definitions for {controller} from {source} to {target}",
        phase=PHASE_PREPARATION,
        pre=[],
        eff=[("ncell_data_copied", True)],
        deps=[],
    ),
    dict(
        index=6,
        description="Create new external-cell records at {source}, left not operating",
        phase=PHASE_PREPARATION,
        pre=[("new_ext_source", "absent")],
        eff=[("new_ext_source", "not_operating")],
        deps=[],
    ),
    dict(
        index=7,
        description="Create new external-cell records at {target}, left not operating",
        phase=PHASE_PREPARATION,
        pre=[("new_ext_target", "absent")],
        eff=[("new_ext_target", "not_operating")],
        deps=[],
    ),
    dict(
        index=8,
        description="Halt the serving cells of {controller} at {source}",
        phase=PHASE_PREPARATION,
        pre=[("cell_state", "operating")],
        eff=[("cell_state", "halted")],
        deps=[],
    ),
    dict(
        index=9,
        description="Block TRX resources on {sites} of {controller}",
        phase=PHASE_PREPARATION,
        pre=[("trx", "active")],
        eff=[("trx", "blocked")],
        deps=[],
    ),
    dict(
        index=10,
        description="Set old external-cell records at {source} and {target} to not operating",
        phase=PHASE_PREPARATION,
        pre=[("old_ext_source", "operating"), ("old_ext_target", "operating")],
        eff=[("old_ext_source", "not_operating"), ("old_ext_target", "not_operating")],
        deps=[],
    ),
    dict(
        index=11,
        description="Move the switching connection for {controller} from {source} to {target}",
        phase=PHASE_CUTOVER,
        pre=[
            ("trx", "blocked"),
            ("cell_state", "halted"),
            ("hardware_verified", True),
            ("software_checked", True),
            ("cell_data_copied", True),
            ("site_data_copied", True),
            ("ncell_data_copied", True),
            ("new_ext_source", "not_operating"),
            ("new_ext_target", "not_operating"),
            ("old_ext_source", "not_operating"),
            ("old_ext_target", "not_operating"),
            ("connection", "at_source"),
        ],
        eff=[("connection", "at_target")],
        deps=[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
    ),
    dict(
        index=12,
        description="Update the CGI registration at {registry}",
        phase=PHASE_COMPLETION,
        pre=[("connection", "at_target"), ("cgi", "old_parent")],
        eff=[("cgi", "new_parent")],
        deps=[11],
    ),
    dict(
        index=13,
        description="Set new external-cell records at {source} and {target} to operating",
        phase=PHASE_COMPLETION,
        pre=[
            ("connection", "at_target"),
            ("new_ext_source", "not_operating"),
            ("new_ext_target", "not_operating"),
        ],
        eff=[("new_ext_source", "operating"), ("new_ext_target", "operating")],
        deps=[11],
    ),
    dict(
        index=14,
        description="De-block TRX resources on {sites} of {controller}",
        phase=PHASE_COMPLETION,
        pre=[("cgi", "new_parent"), ("trx", "blocked")],
        eff=[("trx", "active")],
        deps=[12],
    ),
    dict(
        index=15,
        description="Activate the cells of {controller} at {target}",
        phase=PHASE_COMPLETION,
        pre=[("connection", "at_target"), ("cell_state", "halted")],
        eff=[("cell_state", "operating")],
        deps=[11],
    ),
    dict(
        index=16,
        description="Remove cell definitions for {controller} from {source}",
        phase=PHASE_COMPLETION,
        pre=[("connection", "at_target")],
        eff=[("source_cell_data", False)],
        deps=[11],
    ),
    dict(
        index=17,
        description="Remove site definitions for {controller} from {source}",
        phase=PHASE_COMPLETION,
        pre=[("connection", "at_target")],
        eff=[("source_site_data", False)],
        deps=[11],
    ),
    dict(
        index=18,
        description="Remove neighbor-cell definitions for {controller} from {source}",
        phase=PHASE_COMPLETION,
        pre=[("connection", "at_target")],
        eff=[("source_ncell_data", False)],
        deps=[11],
    ),
    dict(
        index=19,
        description="Remove old external-cell records from {source}",
        phase=PHASE_COMPLETION,
        pre=[("connection", "at_target"), ("old_ext_source", "not_operating")],
        eff=[("old_ext_source", "absent")],
        deps=[11],
    ),
    dict(
        index=20,
        description="Remove old external-cell records from {target}",
        phase=PHASE_COMPLETION,
        pre=[("connection", "at_target"), ("old_ext_target", "not_operating")],
        eff=[("old_ext_target", "absent")],
        deps=[11],
    ),
]


def _instantiate(template: dict, slots: dict[str, str], adapted: bool) -> RunbookStep:
    return RunbookStep(
        index=template["index"],
        description=template["description"].format(**slots),
        phase=template["phase"],
        preconditions=tuple(template["pre"]),
        effects=tuple(template["eff"]),
        depends_on=tuple(template["deps"]),
        adapted=adapted,
    )


def generate_runbook(
    scenario: RehomingScenario | None, topology: NetworkTopology
) -> list[RunbookStep]:
    """Instantiate the 20-step procedure for one planned move.

    BSC moves use the native 2G template; RNC moves get the name-substituted
    3G variant with every step flagged ``adapted`` (the 3G procedure is an
    engine-declared adaptation, not an operator-published one).
    """
    if scenario is None or not scenario.moved_controllers:
        return []
    steps: list[RunbookStep] = []
    for cid in scenario.moved_controllers:
        try:
            ctrl = topology.controller(cid)
            sources = sorted(scenario.source_switch_ids & ctrl.homed_to) or sorted(
                scenario.source_switch_ids
            )
            targets = sorted(scenario.target_switch_ids)
            target_switches = [topology.switch(t) for t in targets]
        except Exception as exc:
            raise IncompletePlanError(f"plan references missing node metadata: {exc}") from None
        if not sources or not targets:
            raise IncompletePlanError(f"move of {cid} lacks source or target switches")

        adapted = ctrl.kind is ControllerKind.RNC
        if adapted:
            sites = "the Node-B sites"
            # CGI records live with the 3G control plane: the target MSS
            mss_ids = sorted(
                {sw.mss_id for sw in target_switches if sw.mss_id is not None}
            )
            registry = mss_ids[0] if mss_ids else targets[0]
        else:
            sites = "the BTS sites"
            msc_targets = [sw.id for sw in target_switches if sw.kind is SwitchKind.MSC_2G]
            if msc_targets:
                registry = msc_targets[0]
            else:
                mss_ids = sorted(
                    {sw.mss_id for sw in target_switches if sw.mss_id is not None}
                )
                registry = mss_ids[0] if mss_ids else targets[0]
        slots = {
            "controller": cid,
            "source": ", ".join(sources),
            "target": ", ".join(targets),
            "sites": sites,
            "registry": registry,
        }
        steps.extend(_instantiate(t, slots, adapted) for t in _STEP_TEMPLATE)
    return steps


@dataclass(frozen=True)
class SimulationResult:
    ok: bool
    final_state: dict
    violation_step: int | None = None
    violation_reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "final_state": dict(self.final_state),
            "violation_step": self.violation_step,
            "violation_reason": self.violation_reason,
        }


def simulate_runbook(steps: list[RunbookStep], initial: dict | None = None) -> SimulationResult:
    """Replay steps in the given order, failing at the first unmet precondition."""
    state = dict(INITIAL_STATE if initial is None else initial)
    for step in steps:
        for fld, expected in step.preconditions:
            if state.get(fld) != expected:
                return SimulationResult(
                    ok=False,
                    final_state=state,
                    violation_step=step.index,
                    violation_reason=f"step {step.index} requires {fld}={expected!r}, found {state.get(fld)!r}",
                )
        for fld, value in step.effects:
            state[fld] = value
    return SimulationResult(ok=True, final_state=state)


def is_terminal(state: dict) -> bool:
    return state == TERMINAL_STATE


def is_linear_extension(order: list[RunbookStep]) -> bool:
    """Independent order check against the declared dependency edges only."""
    seen: set[int] = set()
    for step in order:
        if any(dep not in seen for dep in step.depends_on):
            return False
        seen.add(step.index)
    return True


def runbook_to_text(steps: list[RunbookStep]) -> str:
    """Human checklist: numbered steps with their gating preconditions."""
    lines = []
    current_phase = None
    for step in steps:
        if step.phase != current_phase:
            lines.append(f"## {step.phase}")
            current_phase = step.phase
        marker = " [adapted]" if step.adapted else ""
        lines.append(f"{step.index:2d}. {step.description}{marker}")
        if step.preconditions:
            gates = ", ".join(f"{fld}={val}" for fld, val in step.preconditions)
            lines.append(f"      requires: {gates}")
    return "\n".join(lines) + ("\n" if lines else "")
