"""Planner configuration: traffic/SS7 models, prices and planning knobs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path

from .errors import InputError, InvalidModelError
from .forecast import Ss7Model, TrafficModel, TrunkSizing
from .topology import validate_against_schema


@dataclass(frozen=True)
class Prices:
    trunk_unit_price: Decimal = Decimal("1000.00")
    switch_unit_price: Decimal = Decimal("1000000.00")


@dataclass(frozen=True)
class PlannerConfig:
    traffic_model: TrafficModel = field(default_factory=TrafficModel)
    ss7_model: Ss7Model = field(default_factory=Ss7Model)
    prices: Prices = field(default_factory=Prices)
    trunk_sizing: TrunkSizing = field(default_factory=TrunkSizing)
    # Feasibility ratio for the optimizer: utilization of installed capacity
    # a plan must stay under.
    load_threshold: float = 0.8
    # When true, trunk forecasts are treated as already headroom-adjusted and
    # the expansion formula skips its division by the redundancy factor.
    redundancy_applied_in_forecast: bool = False

    def __post_init__(self):
        if not (0 < self.load_threshold <= 1):
            raise InvalidModelError("load_threshold must be in (0, 1]")


def config_from_dict(doc: dict) -> PlannerConfig:
    validate_against_schema(doc, "config")
    tm = doc.get("traffic_model", {})
    ss7 = doc.get("ss7_model", {})
    prices = doc.get("prices", {})
    sizing = doc.get("trunk_sizing", {})
    defaults = PlannerConfig()
    return PlannerConfig(
        traffic_model=TrafficModel(
            erlang_per_subscriber=tm.get("erlang_per_subscriber", defaults.traffic_model.erlang_per_subscriber),
            mean_call_seconds=tm.get("mean_call_seconds", defaults.traffic_model.mean_call_seconds),
            channel_loading=tm.get("channel_loading", defaults.traffic_model.channel_loading),
            trunk_standard=tm.get("trunk_standard", defaults.traffic_model.trunk_standard),
        ),
        ss7_model=Ss7Model(
            msu_per_call=ss7.get("msu_per_call", defaults.ss7_model.msu_per_call),
            bits_per_msu=ss7.get("bits_per_msu", defaults.ss7_model.bits_per_msu),
            link_count=ss7.get("link_count", defaults.ss7_model.link_count),
            link_bps=ss7.get("link_bps", defaults.ss7_model.link_bps),
        ),
        prices=Prices(
            trunk_unit_price=_money(prices.get("trunk_unit_price", defaults.prices.trunk_unit_price)),
            switch_unit_price=_money(prices.get("switch_unit_price", defaults.prices.switch_unit_price)),
        ),
        trunk_sizing=TrunkSizing(
            method=sizing.get("method", defaults.trunk_sizing.method),
            target_blocking=sizing.get("target_blocking", defaults.trunk_sizing.target_blocking),
        ),
        load_threshold=doc.get("load_threshold", defaults.load_threshold),
        redundancy_applied_in_forecast=doc.get(
            "redundancy_applied_in_forecast", defaults.redundancy_applied_in_forecast
        ),
    )


def config_to_dict(config: PlannerConfig) -> dict:
    return {
        "traffic_model": {
            "erlang_per_subscriber": config.traffic_model.erlang_per_subscriber,
            "mean_call_seconds": config.traffic_model.mean_call_seconds,
            "channel_loading": config.traffic_model.channel_loading,
            "trunk_standard": config.traffic_model.trunk_standard,
        },
        "ss7_model": {
            "msu_per_call": config.ss7_model.msu_per_call,
            "bits_per_msu": config.ss7_model.bits_per_msu,
            "link_count": config.ss7_model.link_count,
            "link_bps": config.ss7_model.link_bps,
        },
        "prices": {
            "trunk_unit_price": float(config.prices.trunk_unit_price),
            "switch_unit_price": float(config.prices.switch_unit_price),
        },
        "trunk_sizing": {
            "method": config.trunk_sizing.method,
            "target_blocking": config.trunk_sizing.target_blocking,
        },
        "load_threshold": config.load_threshold,
        "redundancy_applied_in_forecast": config.redundancy_applied_in_forecast,
    }


def _money(value) -> Decimal:
    return Decimal(str(value)).quantize(Decimal("0.01"))


def load_config(path: str | Path) -> PlannerConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from None
    return config_from_dict(doc)
