"""Re-homing scenario engine.

A scenario moves one or more controllers off their current parent switches
onto a target switch set. This module classifies the move into one of the
nine source/target shape models, validates it against the distribution
principles (single market, no same-MSS moves, no cherry-picked target sets),
computes the even-split traffic deltas, and produces the after-re-homing
utilization series.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    InvalidBaselineError,
    InfeasibleDeltaError,
    ScenarioInvalidError,
    UnclassifiableScenarioError,
)
from .forecast import (
    MonthUtilization,
    Phase,
    Ss7Model,
    TrafficModel,
    UtilizationSeries,
    forecast_ss7,
)
from .topology import (
    ControllerKind,
    NetworkTopology,
    SwitchCapacity,
    SwitchKind,
    Violation,
    switches_in_market,
)


class SetKind(str, Enum):
    SINGLE_2G_MSC = "single_2g_msc"
    SINGLE_3G_MGW = "single_3g_mgw"
    MULTI_3G_MGW = "multi_3g_mgw"


# (source shape, target shape) -> model number; total over the nine valid pairs
MODEL_NUMBERS = {
    (SetKind.SINGLE_3G_MGW, SetKind.SINGLE_3G_MGW): 1,
    (SetKind.SINGLE_2G_MSC, SetKind.SINGLE_2G_MSC): 2,
    (SetKind.SINGLE_3G_MGW, SetKind.SINGLE_2G_MSC): 3,
    (SetKind.SINGLE_2G_MSC, SetKind.SINGLE_3G_MGW): 4,
    (SetKind.SINGLE_2G_MSC, SetKind.MULTI_3G_MGW): 5,
    (SetKind.SINGLE_3G_MGW, SetKind.MULTI_3G_MGW): 6,
    (SetKind.MULTI_3G_MGW, SetKind.SINGLE_2G_MSC): 7,
    (SetKind.MULTI_3G_MGW, SetKind.SINGLE_3G_MGW): 8,
    (SetKind.MULTI_3G_MGW, SetKind.MULTI_3G_MGW): 9,
}


@dataclass(frozen=True)
class RehomingScenario:
    """A concrete move. Source switches are inferred from current homing.

    The move executes in ``rehoming_month``; utilization changes take effect
    from the following month.
    """

    moved_controllers: tuple[str, ...]
    source_switch_ids: frozenset[str]
    target_switch_ids: frozenset[str]
    rehoming_month: int

    def __post_init__(self):
        if not self.moved_controllers:
            raise ScenarioInvalidError([Violation("empty-move", "-", "no controllers to move")])
        if self.rehoming_month < 1:
            raise ScenarioInvalidError(
                [Violation("bad-month", "-", "rehoming_month must be >= 1")]
            )

    @property
    def n_source(self) -> int:
        return len(self.source_switch_ids)

    @property
    def n_target(self) -> int:
        return len(self.target_switch_ids)

    @property
    def effective_month(self) -> int:
        return self.rehoming_month + 1

    def to_dict(self) -> dict:
        return {
            "moved_controllers": sorted(self.moved_controllers),
            "source_switch_ids": sorted(self.source_switch_ids),
            "target_switch_ids": sorted(self.target_switch_ids),
            "rehoming_month": self.rehoming_month,
            "n_source": self.n_source,
            "n_target": self.n_target,
        }


def build_scenario(
    topology: NetworkTopology,
    moved_controllers: list[str],
    target_switch_ids: list[str],
    rehoming_month: int,
) -> RehomingScenario:
    """Resolve source switches from the controllers' current homing."""
    sources: set[str] = set()
    for cid in moved_controllers:
        sources |= topology.controller(cid).homed_to
    return RehomingScenario(
        moved_controllers=tuple(sorted(moved_controllers)),
        source_switch_ids=frozenset(sources),
        target_switch_ids=frozenset(target_switch_ids),
        rehoming_month=rehoming_month,
    )


def scenario_from_dict(doc: dict, topology: NetworkTopology) -> RehomingScenario:
    from .topology import validate_against_schema

    validate_against_schema(doc, "scenario")
    return build_scenario(
        topology,
        moved_controllers=doc["moved_controllers"],
        target_switch_ids=doc["target_switch_ids"],
        rehoming_month=doc["rehoming_month"],
    )


@dataclass(frozen=True)
class ModelClassification:
    model_number: int
    source_kind: SetKind
    target_kind: SetKind

    def to_dict(self) -> dict:
        return {
            "model_number": self.model_number,
            "source_kind": self.source_kind.value,
            "target_kind": self.target_kind.value,
        }


class DeltaSign(str, Enum):
    SOURCE_LOSES = "source_loses"
    TARGET_GAINS = "target_gains"


@dataclass(frozen=True)
class TrafficDelta:
    """Per-switch share of the moved traffic; sources negative, targets positive."""

    switch_id: str
    erlang_delta: float
    trunk_delta: float
    sign: DeltaSign

    def to_dict(self) -> dict:
        return {
            "switch_id": self.switch_id,
            "erlang_delta": self.erlang_delta,
            "trunk_delta": self.trunk_delta,
            "sign": self.sign.value,
        }


def _set_kind(topology: NetworkTopology, switch_ids: frozenset[str], side: str) -> SetKind:
    kinds = {topology.switch(sid).kind for sid in switch_ids}
    if len(kinds) > 1:
        raise UnclassifiableScenarioError(f"mixed-kind {side} set")
    kind = kinds.pop()
    if kind is SwitchKind.MSC_2G:
        if len(switch_ids) > 1:
            raise UnclassifiableScenarioError(f"multiple 2G MSC {side} switches")
        return SetKind.SINGLE_2G_MSC
    return SetKind.SINGLE_3G_MGW if len(switch_ids) == 1 else SetKind.MULTI_3G_MGW


def classify(scenario: RehomingScenario, topology: NetworkTopology) -> ModelClassification:
    """Map the scenario's source/target shape onto its model number (1-9)."""
    if not scenario.source_switch_ids or not scenario.target_switch_ids:
        raise UnclassifiableScenarioError("empty source or target set")
    source_kind = _set_kind(topology, scenario.source_switch_ids, "source")
    target_kind = _set_kind(topology, scenario.target_switch_ids, "target")
    return ModelClassification(
        model_number=MODEL_NUMBERS[(source_kind, target_kind)],
        source_kind=source_kind,
        target_kind=target_kind,
    )


def validate_scenario(scenario: RehomingScenario, topology: NetworkTopology) -> list[Violation]:
    """Check the move against scope and distribution principles.

    An empty result guarantees :func:`classify` succeeds. Violations are data;
    nothing raises here.
    """
    out: list[Violation] = []

    known = True
    for cid in sorted(scenario.moved_controllers):
        if not topology.has_controller(cid):
            out.append(Violation("unknown-id", cid, "controller does not exist"))
            known = False
    for sid in sorted(scenario.source_switch_ids | scenario.target_switch_ids):
        if not topology.has_switch(sid):
            out.append(Violation("unknown-id", sid, "switch does not exist"))
            known = False
    if not known:
        return out

    overlap = scenario.source_switch_ids & scenario.target_switch_ids
    for sid in sorted(overlap):
        out.append(Violation("source-target-overlap", sid, "switch is both source and target"))

    sources = [topology.switch(s) for s in sorted(scenario.source_switch_ids)]
    targets = [topology.switch(s) for s in sorted(scenario.target_switch_ids)]

    # shape rules: each side is one MSC or a set of MGWs under one MSS
    src_kinds = {s.kind for s in sources}
    tgt_kinds = {t.kind for t in targets}
    if len(src_kinds) > 1:
        out.append(Violation("mixed-kind-source", "-", "source set mixes MGW and MSC switches"))
    elif src_kinds == {SwitchKind.MSC_2G} and len(sources) > 1:
        out.append(Violation("multi-msc-source", "-", "more than one 2G MSC source"))
    if len(tgt_kinds) > 1:
        out.append(Violation("mixed-kind-target", "-", "target set mixes MGW and MSC switches"))
    elif tgt_kinds == {SwitchKind.MSC_2G} and len(targets) > 1:
        out.append(Violation("multi-msc-target", "-", "more than one 2G MSC target"))

    # scope: one market end to end
    markets = {s.market_id for s in sources} | {t.market_id for t in targets}
    if len(markets) > 1:
        out.append(
            Violation(
                "cross-market-target",
                ", ".join(sorted(markets)),
                "re-homing must stay within one market",
            )
        )

    # an RNC keeps its Iu-CS coupling: MGW targets only
    rnc_moved = any(
        topology.controller(c).kind is ControllerKind.RNC for c in scenario.moved_controllers
    )
    if rnc_moved and SwitchKind.MSC_2G in tgt_kinds:
        out.append(Violation("rnc-to-msc-target", "-", "an RNC may only re-home to 3G MGWs"))

    mgw_targets = [t for t in targets if t.kind is SwitchKind.MGW_3G]
    if mgw_targets:
        target_mss_ids = {t.mss_id for t in mgw_targets if t.mss_id is not None}
        if len(target_mss_ids) > 1:
            out.append(Violation("multi-mss-target", "-", "target MGWs span several MSS"))
        elif len(target_mss_ids) == 1:
            target_mss = next(iter(target_mss_ids))
            # principle 1: never move between MGWs of one MSS
            source_mss_ids = {s.mss_id for s in sources if s.kind is SwitchKind.MGW_3G}
            if target_mss in source_mss_ids:
                out.append(
                    Violation(
                        "same-mss-target",
                        target_mss,
                        "source and target MGWs belong to the same MSS",
                    )
                )
            # principle 2: the full in-market MGW set of the target MSS, no cherry-picking
            elif len(markets) == 1:
                market_id = next(iter(markets))
                expected = switches_in_market(topology, target_mss, market_id)
                actual = {t.id for t in mgw_targets}
                if expected != actual:
                    out.append(
                        Violation(
                            "partial-target-set",
                            target_mss,
                            "target must cover every in-market MGW of the target MSS "
                            f"(expected {sorted(expected)}, got {sorted(actual)})",
                        )
                    )
    return out


def compute_deltas(scenario: RehomingScenario, topology: NetworkTopology) -> list[TrafficDelta]:
    """Even-split traffic/trunk deltas; sums to zero across all switches."""
    violations = validate_scenario(scenario, topology)
    if violations:
        raise ScenarioInvalidError(violations)

    total_erlang = sum(topology.controller(c).traffic_erlang for c in scenario.moved_controllers)
    total_trunks = sum(topology.controller(c).trunks for c in scenario.moved_controllers)

    deltas = [
        TrafficDelta(
            switch_id=sid,
            erlang_delta=-total_erlang / scenario.n_source,
            trunk_delta=-total_trunks / scenario.n_source,
            sign=DeltaSign.SOURCE_LOSES,
        )
        for sid in sorted(scenario.source_switch_ids)
    ]
    deltas += [
        TrafficDelta(
            switch_id=sid,
            erlang_delta=total_erlang / scenario.n_target,
            trunk_delta=total_trunks / scenario.n_target,
            sign=DeltaSign.TARGET_GAINS,
        )
        for sid in sorted(scenario.target_switch_ids)
    ]
    return deltas


@dataclass(frozen=True)
class DeltaEvent:
    """One switch-level delta taking effect from a given month."""

    effective_month: int
    erlang_delta: float
    trunk_delta: float


def forecast_after_events(
    series_before: UtilizationSeries,
    events: list[DeltaEvent],
    ss7: Ss7Model,
) -> UtilizationSeries:
    """After-re-homing series for one switch under any number of moves.

    Deltas are linear, so concurrent moves compose additively; each month
    carries the sum of every delta already in effect. Months no event has
    reached yet are copied unchanged so before/after series overlay directly.
    Call attempts scale off the first-month anchor (a1 * traffic / Y1), trunks
    shift by the summed trunk delta, and signaling is recomputed from the new
    call attempts. Any negative monthly value is an error, never a silent
    clamp.
    """
    if not series_before.months:
        return UtilizationSeries(series_before.switch_id, Phase.AFTER, ())
    anchor = series_before.months[0]
    y1, a1 = anchor.traffic_erlang, anchor.bhca

    months: list[MonthUtilization] = []
    for rec in series_before.months:
        erlang_delta = sum(e.erlang_delta for e in events if e.effective_month <= rec.n)
        trunk_delta = sum(e.trunk_delta for e in events if e.effective_month <= rec.n)
        if not any(e.effective_month <= rec.n for e in events):
            months.append(rec)
            continue
        if y1 <= 0 or a1 <= 0:
            raise InvalidBaselineError(
                f"series for {series_before.switch_id} has no positive first-month baseline"
            )
        traffic = rec.traffic_erlang + erlang_delta
        bhca = a1 * traffic / y1
        trunks = rec.trunks + trunk_delta
        if traffic < 0 or bhca < 0 or trunks < 0:
            raise InfeasibleDeltaError(
                f"delta drives {series_before.switch_id} negative in month {rec.n}"
            )
        months.append(
            MonthUtilization(
                n=rec.n,
                traffic_erlang=traffic,
                bhca=bhca,
                trunks=trunks,
                ss7_util=forecast_ss7(bhca, ss7),
                label=rec.label,
            )
        )
    return UtilizationSeries(series_before.switch_id, Phase.AFTER, tuple(months))


def forecast_after(
    series_before: UtilizationSeries,
    delta: TrafficDelta,
    model: TrafficModel,
    ss7: Ss7Model,
    effective_month: int,
) -> UtilizationSeries:
    """After-re-homing series for one switch under a single move."""
    if series_before.months:
        anchor = series_before.months[0]
        if anchor.traffic_erlang <= 0 or anchor.bhca <= 0:
            raise InvalidBaselineError(
                f"series for {series_before.switch_id} has no positive first-month baseline"
            )
    event = DeltaEvent(
        effective_month=effective_month,
        erlang_delta=delta.erlang_delta,
        trunk_delta=delta.trunk_delta,
    )
    return forecast_after_events(series_before, [event], ss7)


def recommend_rehoming_month(series: UtilizationSeries, capacity: SwitchCapacity) -> int | None:
    """First month whose utilization reaches the installed-capacity headroom limit.

    The limit for each criterion is installed capacity times the redundancy
    factor; breaching it is the signal to execute a re-homing in that month.
    """
    f = capacity.redundancy_factor
    for rec in series.months:
        if (
            rec.trunks >= capacity.trunks_installed * f
            or rec.bhca >= capacity.bhca_installed * f
            or rec.ss7_util >= capacity.ss7_installed * f
        ):
            return rec.n
    return None
