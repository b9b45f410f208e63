"""Monthly utilization forecasting for core switches.

Given a subscriber plan and a traffic model, computes the before-re-homing
utilization series: traffic in erlang (subscribers times erlang-per-subscriber),
busy-hour call attempts (traffic * 3600 / mean call seconds), trunk demand
(traffic / (channel loading * channels per trunk), kept fractional), and SS7
link utilization. Trunk demand can alternatively be dimensioned through the
Erlang B calculator at a configured blocking target.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import InputError, InvalidModelError

TRUNK_CHANNELS = {"T1": 24, "E1": 30}


class Phase(str, Enum):
    BEFORE = "before_rehoming"
    AFTER = "after_rehoming"


@dataclass(frozen=True)
class TrafficModel:
    """Operator traffic model: per-subscriber intensity and call shape."""

    erlang_per_subscriber: float = 0.02
    mean_call_seconds: float = 90.0
    channel_loading: float = 0.7
    trunk_standard: str = "T1"

    def __post_init__(self):
        if self.erlang_per_subscriber <= 0:
            raise InvalidModelError("erlang_per_subscriber must be > 0")
        if self.mean_call_seconds <= 0:
            raise InvalidModelError("mean_call_seconds must be > 0")
        if not (0 < self.channel_loading <= 1):
            raise InvalidModelError("channel_loading must be in (0, 1]")
        if self.trunk_standard not in TRUNK_CHANNELS:
            raise InvalidModelError(f"trunk_standard must be one of {sorted(TRUNK_CHANNELS)}")

    @property
    def channels_per_trunk(self) -> int:
        return TRUNK_CHANNELS[self.trunk_standard]


@dataclass(frozen=True)
class Ss7Model:
    """Linear signaling-load model; engine-defined defaults, flagged in reports."""

    msu_per_call: float = 10.0
    bits_per_msu: float = 800.0
    link_count: int = 1
    link_bps: float = 64000.0

    def __post_init__(self):
        if min(self.msu_per_call, self.bits_per_msu, self.link_count, self.link_bps) <= 0:
            raise InvalidModelError("all SS7 model parameters must be > 0")


@dataclass(frozen=True)
class MonthValue:
    n: int
    subscribers: float
    label: str | None = None


@dataclass(frozen=True)
class SubscriberForecast:
    switch_id: str
    months: tuple[MonthValue, ...]

    def __post_init__(self):
        last = 0
        for mv in self.months:
            if mv.n <= last:
                raise InputError(
                    f"forecast for {self.switch_id}: month indices must be strictly increasing from 1"
                )
            if mv.subscribers < 0:
                raise InputError(f"forecast for {self.switch_id}: subscribers must be >= 0")
            last = mv.n


@dataclass(frozen=True)
class MonthUtilization:
    n: int
    traffic_erlang: float
    bhca: float
    trunks: float
    ss7_util: float
    label: str | None = None

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "traffic_erlang": self.traffic_erlang,
            "bhca": self.bhca,
            "trunks": self.trunks,
            "ss7_util": self.ss7_util,
        }
        if self.label is not None:
            d["label"] = self.label
        return d


@dataclass(frozen=True)
class UtilizationSeries:
    switch_id: str
    phase: Phase
    months: tuple[MonthUtilization, ...]

    def month(self, n: int) -> MonthUtilization:
        for m in self.months:
            if m.n == n:
                return m
        raise InputError(f"series for {self.switch_id} has no month {n}")

    def month_indices(self) -> tuple[int, ...]:
        return tuple(m.n for m in self.months)

    def to_dict(self) -> dict:
        return {
            "switch_id": self.switch_id,
            "phase": self.phase.value,
            "months": [m.to_dict() for m in self.months],
        }


# --------------------------------------------------------------------------
# Point operations
# --------------------------------------------------------------------------

def forecast_traffic(subscribers: float, model: TrafficModel) -> float:
    """Switch traffic in erlang for a subscriber count."""
    if subscribers < 0:
        raise InputError("subscribers must be >= 0")
    return subscribers * model.erlang_per_subscriber


def forecast_bhca(traffic_erlang: float, model: TrafficModel) -> float:
    """Busy-hour call attempts supported by the given traffic."""
    if traffic_erlang < 0:
        raise InputError("traffic must be >= 0")
    return traffic_erlang * 3600.0 / model.mean_call_seconds


def forecast_trunks(traffic_erlang: float, model: TrafficModel) -> float:
    """Fractional trunk demand; callers round up only at provisioning time."""
    if traffic_erlang < 0:
        raise InputError("traffic must be >= 0")
    return traffic_erlang / (model.channel_loading * model.channels_per_trunk)


def forecast_ss7(bhca: float, ss7: Ss7Model) -> float:
    """Signaling utilization as a fraction of the configured link capacity."""
    if bhca < 0:
        raise InputError("bhca must be >= 0")
    bits_per_second = (bhca / 3600.0) * ss7.msu_per_call * ss7.bits_per_msu
    return bits_per_second / (ss7.link_count * ss7.link_bps)


def erlang_b_blocking(offered: float, lines: int) -> float:
    """Erlang B blocking probability B(E, m) via the standard recurrence."""
    if offered < 0:
        raise InputError("offered traffic must be >= 0")
    if lines < 0:
        raise InputError("line count must be >= 0")
    return float(_kernels.erlang_b(float(offered), int(lines)))


def erlang_b_blocking_grid(offered, lines) -> np.ndarray:
    """Blocking for paired arrays of offered loads and line counts."""
    offered = np.asarray(offered, dtype=np.float64)
    lines = np.asarray(lines, dtype=np.int64)
    if offered.shape != lines.shape:
        raise InputError("offered and lines arrays must have matching shapes")
    if (offered < 0).any() or (lines < 0).any():
        raise InputError("offered traffic and line counts must be >= 0")
    return _kernels.erlang_b_grid(offered, lines)


def erlang_b_required_lines(offered: float, target_blocking: float) -> int:
    """Smallest m with B(offered, m) <= target_blocking; 0 for zero traffic."""
    if not (0.0 < target_blocking < 1.0):
        raise InputError("target_blocking must be in (0, 1)")
    if offered < 0:
        raise InputError("offered traffic must be >= 0")
    return int(_kernels.erlang_b_lines(float(offered), float(target_blocking)))


# --------------------------------------------------------------------------
# Series construction
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TrunkSizing:
    """Selects how trunk demand is derived from traffic.

    ``linear`` divides traffic by per-trunk capacity; ``erlang_b`` dimensions
    channels at ``target_blocking`` and converts them to trunks. The Erlang B
    route intentionally breaks linearity in traffic.
    """

    method: str = "linear"
    target_blocking: float = 0.01

    def __post_init__(self):
        if self.method not in ("linear", "erlang_b"):
            raise InvalidModelError("trunk sizing method must be 'linear' or 'erlang_b'")
        if not (0 < self.target_blocking < 1):
            raise InvalidModelError("target_blocking must be in (0, 1)")


def trunks_for_traffic(traffic_erlang: float, model: TrafficModel, sizing: TrunkSizing) -> float:
    if sizing.method == "linear":
        return forecast_trunks(traffic_erlang, model)
    lines = erlang_b_required_lines(traffic_erlang, sizing.target_blocking) if traffic_erlang > 0 else 0
    return lines / model.channels_per_trunk


def build_utilization_series(
    forecast: SubscriberForecast,
    model: TrafficModel,
    ss7: Ss7Model,
    sizing: TrunkSizing | None = None,
) -> UtilizationSeries:
    """Before-re-homing series for one switch, one record per forecast month."""
    sizing = sizing or TrunkSizing()
    subscribers = np.array([mv.subscribers for mv in forecast.months], dtype=np.float64)
    traffic = subscribers * model.erlang_per_subscriber
    bhca = traffic * 3600.0 / model.mean_call_seconds
    if sizing.method == "linear":
        trunks = traffic / (model.channel_loading * model.channels_per_trunk)
    else:
        trunks = np.array([trunks_for_traffic(y, model, sizing) for y in traffic])
    ss7_util = (bhca / 3600.0) * ss7.msu_per_call * ss7.bits_per_msu / (ss7.link_count * ss7.link_bps)

    months = tuple(
        MonthUtilization(
            n=mv.n,
            traffic_erlang=float(traffic[i]),
            bhca=float(bhca[i]),
            trunks=float(trunks[i]),
            ss7_util=float(ss7_util[i]),
            label=mv.label,
        )
        for i, mv in enumerate(forecast.months)
    )
    return UtilizationSeries(switch_id=forecast.switch_id, phase=Phase.BEFORE, months=months)


def forecasts_from_list(doc: list) -> dict[str, SubscriberForecast]:
    """Parse the forecast file content (already schema-validated upstream)."""
    out: dict[str, SubscriberForecast] = {}
    for entry in doc:
        sid = entry["switch_id"]
        if sid in out:
            raise InputError(f"duplicate forecast for switch {sid}")
        months = tuple(
            MonthValue(n=m["n"], subscribers=m["subscribers"], label=m.get("label"))
            for m in entry["months"]
        )
        out[sid] = SubscriberForecast(switch_id=sid, months=months)
    return out


def forecasts_to_list(forecasts: dict[str, SubscriberForecast]) -> list:
    out = []
    for sid in sorted(forecasts):
        fc = forecasts[sid]
        months = []
        for mv in fc.months:
            d = {"n": mv.n, "subscribers": mv.subscribers}
            if mv.label is not None:
                d["label"] = mv.label
            months.append(d)
        out.append({"switch_id": sid, "months": months})
    return out
