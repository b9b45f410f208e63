"""Network graph model: markets, switches, controllers and their homing links.

Topologies are immutable snapshots. Structural problems are reported as
:class:`Violation` values by :func:`validate_topology`, never raised, so a
planner can inspect a broken inventory instead of crashing on it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import InputError, NotFoundError


class SwitchKind(str, Enum):
    MGW_3G = "mgw3g"
    MSC_2G = "msc2g"


class ControllerKind(str, Enum):
    RNC = "rnc"
    BSC = "bsc"


@dataclass(frozen=True)
class Market:
    id: str
    name: str


@dataclass(frozen=True)
class Mss:
    """3G control-plane node; may manage media gateways in several markets."""

    id: str
    controlled_mgw_ids: frozenset[str]


@dataclass(frozen=True)
class SwitchCapacity:
    """Installed/maximum limits for the three dimensioning criteria.

    ``trunks_per_card`` is the expansion granularity (vendor-specific) and
    ``redundancy_factor`` the headroom ratio applied against capacities.
    """

    bhca_installed: float
    bhca_max: float
    trunks_installed: float
    trunks_max: float
    ss7_installed: float
    ss7_max: float
    trunks_per_card: int = 1
    redundancy_factor: float = 0.85


@dataclass(frozen=True)
class SwitchNode:
    """A core switch: a 3G media gateway (under an MSS) or a monolithic 2G MSC."""

    id: str
    kind: SwitchKind
    market_id: str
    capacity: SwitchCapacity
    mss_id: str | None = None


@dataclass(frozen=True)
class ControllerNode:
    """An RNC or BSC, homed to one switch or evenly across several MGWs."""

    id: str
    kind: ControllerKind
    homed_to: frozenset[str]
    trunks: float
    traffic_erlang: float


@dataclass(frozen=True)
class Violation:
    """One broken structural rule, attached to the offending node id."""

    rule: str
    subject: str
    message: str

    def to_dict(self) -> dict:
        return {"rule": self.rule, "subject": self.subject, "message": self.message}


@dataclass(frozen=True)
class NetworkTopology:
    markets: tuple[Market, ...]
    mss: tuple[Mss, ...]
    switches: tuple[SwitchNode, ...]
    controllers: tuple[ControllerNode, ...]

    # lookup indexes, built once per snapshot
    _markets_by_id: dict = field(default_factory=dict, repr=False, compare=False)
    _mss_by_id: dict = field(default_factory=dict, repr=False, compare=False)
    _switches_by_id: dict = field(default_factory=dict, repr=False, compare=False)
    _controllers_by_id: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_markets_by_id", {m.id: m for m in self.markets})
        object.__setattr__(self, "_mss_by_id", {m.id: m for m in self.mss})
        object.__setattr__(self, "_switches_by_id", {s.id: s for s in self.switches})
        object.__setattr__(self, "_controllers_by_id", {c.id: c for c in self.controllers})

    def market(self, market_id: str) -> Market:
        try:
            return self._markets_by_id[market_id]
        except KeyError:
            raise NotFoundError(f"unknown market: {market_id}") from None

    def mss_node(self, mss_id: str) -> Mss:
        try:
            return self._mss_by_id[mss_id]
        except KeyError:
            raise NotFoundError(f"unknown MSS: {mss_id}") from None

    def switch(self, switch_id: str) -> SwitchNode:
        try:
            return self._switches_by_id[switch_id]
        except KeyError:
            raise NotFoundError(f"unknown switch: {switch_id}") from None

    def controller(self, controller_id: str) -> ControllerNode:
        try:
            return self._controllers_by_id[controller_id]
        except KeyError:
            raise NotFoundError(f"unknown controller: {controller_id}") from None

    def has_switch(self, switch_id: str) -> bool:
        return switch_id in self._switches_by_id

    def has_controller(self, controller_id: str) -> bool:
        return controller_id in self._controllers_by_id

    def mss_of_switch(self, switch_id: str) -> Mss | None:
        """The MSS whose controlled set names this switch, if exactly one does."""
        owners = [m for m in self.mss if switch_id in m.controlled_mgw_ids]
        return owners[0] if len(owners) == 1 else None

    def controllers_homed_to(self, switch_id: str) -> list[ControllerNode]:
        return [c for c in self.controllers if switch_id in c.homed_to]


def switches_in_market(topology: NetworkTopology, mss_id: str, market_id: str) -> set[str]:
    """MGWs of one MSS restricted to one market.

    This is the eligible-target rule: gateways the MSS controls in other
    markets are excluded from any re-homing into ``market_id``.
    """
    mss = topology.mss_node(mss_id)
    topology.market(market_id)
    result = set()
    for mgw_id in mss.controlled_mgw_ids:
        sw = topology._switches_by_id.get(mgw_id)
        if sw is not None and sw.market_id == market_id:
            result.add(mgw_id)
    return result


def _check_capacity(switch_id: str, cap: SwitchCapacity, out: list[Violation]) -> None:
    pairs = [
        ("bhca", cap.bhca_installed, cap.bhca_max),
        ("trunks", cap.trunks_installed, cap.trunks_max),
        ("ss7", cap.ss7_installed, cap.ss7_max),
    ]
    for name, installed, maximum in pairs:
        if installed > maximum:
            out.append(
                Violation(
                    "capacity-installed-exceeds-max",
                    switch_id,
                    f"{name} installed capacity {installed} exceeds maximum {maximum}",
                )
            )
    if cap.trunks_per_card < 1:
        out.append(Violation("capacity-bad-card", switch_id, "trunks_per_card must be >= 1"))
    if not (0.0 < cap.redundancy_factor <= 1.0):
        out.append(
            Violation(
                "capacity-bad-redundancy",
                switch_id,
                f"redundancy_factor {cap.redundancy_factor} outside (0, 1]",
            )
        )


def validate_topology(topology: NetworkTopology) -> list[Violation]:
    """Check every structural invariant; an empty list means the graph is sound.

    Deterministic: violations come out in a fixed order for a given topology.
    """
    out: list[Violation] = []

    seen: set[str] = set()
    for node_id in (
        [m.id for m in topology.markets]
        + [m.id for m in topology.mss]
        + [s.id for s in topology.switches]
        + [c.id for c in topology.controllers]
    ):
        if node_id in seen:
            out.append(Violation("duplicate-id", node_id, "id is not unique across the topology"))
        seen.add(node_id)

    market_ids = {m.id for m in topology.markets}
    switch_by_id = {s.id: s for s in topology.switches}

    # MSS <-> MGW ownership must be bidirectionally consistent
    owners: dict[str, list[str]] = {}
    for mss in topology.mss:
        for mgw_id in sorted(mss.controlled_mgw_ids):
            sw = switch_by_id.get(mgw_id)
            if sw is None:
                out.append(Violation("mss-unknown-mgw", mss.id, f"controls unknown switch {mgw_id}"))
                continue
            if sw.kind is not SwitchKind.MGW_3G:
                out.append(Violation("mss-controls-non-mgw", mss.id, f"controls non-MGW switch {mgw_id}"))
            owners.setdefault(mgw_id, []).append(mss.id)

    for sw in topology.switches:
        if sw.market_id not in market_ids:
            out.append(Violation("unknown-market", sw.id, f"market {sw.market_id} does not exist"))
        if sw.kind is SwitchKind.MGW_3G:
            claimed = owners.get(sw.id, [])
            if sw.mss_id is None:
                out.append(Violation("mgw-missing-mss", sw.id, "a 3G MGW must name its MSS"))
            elif sw.mss_id not in {m.id for m in topology.mss}:
                out.append(Violation("mgw-unknown-mss", sw.id, f"MSS {sw.mss_id} does not exist"))
            elif sw.mss_id not in claimed:
                out.append(
                    Violation("mgw-unclaimed", sw.id, f"MSS {sw.mss_id} does not list this MGW as controlled")
                )
            if len(claimed) > 1:
                out.append(
                    Violation("mgw-multiple-mss", sw.id, f"controlled by several MSS: {', '.join(claimed)}")
                )
        else:
            if sw.mss_id is not None:
                out.append(Violation("msc-has-mss", sw.id, "a 2G MSC is monolithic and has no MSS"))
        _check_capacity(sw.id, sw.capacity, out)

    for ctrl in topology.controllers:
        if ctrl.trunks < 0:
            out.append(Violation("negative-trunks", ctrl.id, "trunk count must be >= 0"))
        if ctrl.traffic_erlang < 0:
            out.append(Violation("negative-traffic", ctrl.id, "traffic must be >= 0"))
        if not ctrl.homed_to:
            out.append(Violation("empty-homing", ctrl.id, "controller must home to at least one switch"))
            continue
        homes = []
        missing = False
        for sw_id in sorted(ctrl.homed_to):
            sw = switch_by_id.get(sw_id)
            if sw is None:
                out.append(Violation("unknown-homed-switch", ctrl.id, f"homed to unknown switch {sw_id}"))
                missing = True
            else:
                homes.append(sw)
        if missing:
            continue
        markets = {sw.market_id for sw in homes}
        if len(markets) > 1:
            out.append(Violation("cross-market-homing", ctrl.id, "homing set spans several markets"))
        kinds = {sw.kind for sw in homes}
        if ctrl.kind is ControllerKind.RNC and SwitchKind.MSC_2G in kinds:
            out.append(Violation("rnc-homed-to-msc", ctrl.id, "RNC must home to MGW"))
        if len(kinds) > 1:
            out.append(Violation("mixed-kind-homing", ctrl.id, "homing set mixes MGW and MSC switches"))
        if len(homes) > 1:
            if kinds != {SwitchKind.MGW_3G}:
                out.append(Violation("multi-homing-not-mgw", ctrl.id, "multi-homing is only valid across MGWs"))
            else:
                mss_ids = {sw.mss_id for sw in homes}
                if len(mss_ids) > 1:
                    out.append(
                        Violation("multi-homing-multiple-mss", ctrl.id, "multi-homing must stay under one MSS")
                    )
    return out


# --------------------------------------------------------------------------
# JSON (de)serialization
# --------------------------------------------------------------------------

_SCHEMA_DIR = Path(__file__).resolve().parent / "schemas"
_SCHEMA_CACHE: dict[str, dict] = {}


def load_schema(name: str) -> dict:
    """Load one of the shipped JSON schema documents (``topology``, ``forecast``, ...)."""
    if name not in _SCHEMA_CACHE:
        path = _SCHEMA_DIR / f"{name}.schema.json"
        _SCHEMA_CACHE[name] = json.loads(path.read_text())
    return _SCHEMA_CACHE[name]


def validate_against_schema(document: object, schema_name: str) -> None:
    """Raise :class:`InputError` when a document does not match its schema."""
    import jsonschema

    try:
        jsonschema.validate(document, load_schema(schema_name))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{schema_name} document invalid at {path}: {exc.message}") from None


def topology_from_dict(doc: dict) -> NetworkTopology:
    """Build a topology snapshot from a parsed JSON document.

    Structure (types, required fields, unknown-field rejection) is enforced by
    the shipped schema; semantic rules are left to :func:`validate_topology`.
    """
    validate_against_schema(doc, "topology")
    markets = tuple(Market(id=m["id"], name=m["name"]) for m in doc["markets"])
    mss = tuple(
        Mss(id=m["id"], controlled_mgw_ids=frozenset(m["controlled_mgw_ids"])) for m in doc["mss"]
    )
    switches = []
    for s in doc["switches"]:
        cap = s["capacity"]
        switches.append(
            SwitchNode(
                id=s["id"],
                kind=SwitchKind(s["kind"]),
                market_id=s["market_id"],
                mss_id=s.get("mss_id"),
                capacity=SwitchCapacity(
                    bhca_installed=cap["bhca_installed"],
                    bhca_max=cap["bhca_max"],
                    trunks_installed=cap["trunks_installed"],
                    trunks_max=cap["trunks_max"],
                    ss7_installed=cap["ss7_installed"],
                    ss7_max=cap["ss7_max"],
                    trunks_per_card=cap.get("trunks_per_card", 1),
                    redundancy_factor=cap.get("redundancy_factor", 0.85),
                ),
            )
        )
    controllers = tuple(
        ControllerNode(
            id=c["id"],
            kind=ControllerKind(c["kind"]),
            homed_to=frozenset(c["homed_to"]),
            trunks=c["trunks"],
            traffic_erlang=c["traffic_erlang"],
        )
        for c in doc["controllers"]
    )
    return NetworkTopology(markets=markets, mss=mss, switches=tuple(switches), controllers=controllers)


def topology_to_dict(topology: NetworkTopology) -> dict:
    """Inverse of :func:`topology_from_dict`; ordering is canonical for diffing."""
    return {
        "markets": [{"id": m.id, "name": m.name} for m in topology.markets],
        "mss": [
            {"id": m.id, "controlled_mgw_ids": sorted(m.controlled_mgw_ids)} for m in topology.mss
        ],
        "switches": [
            {
                "id": s.id,
                "kind": s.kind.value,
                "market_id": s.market_id,
                **({"mss_id": s.mss_id} if s.mss_id is not None else {}),
                "capacity": {
                    "bhca_installed": s.capacity.bhca_installed,
                    "bhca_max": s.capacity.bhca_max,
                    "trunks_installed": s.capacity.trunks_installed,
                    "trunks_max": s.capacity.trunks_max,
                    "ss7_installed": s.capacity.ss7_installed,
                    "ss7_max": s.capacity.ss7_max,
                    "trunks_per_card": s.capacity.trunks_per_card,
                    "redundancy_factor": s.capacity.redundancy_factor,
                },
            }
            for s in topology.switches
        ],
        "controllers": [
            {
                "id": c.id,
                "kind": c.kind.value,
                "homed_to": sorted(c.homed_to),
                "trunks": c.trunks,
                "traffic_erlang": c.traffic_erlang,
            }
            for c in topology.controllers
        ],
    }


def load_topology(path: str | Path) -> NetworkTopology:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read topology file {path}: {exc}") from None
    return topology_from_dict(doc)
