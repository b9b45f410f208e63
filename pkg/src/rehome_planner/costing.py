"""Expansion requirements and cost comparison between planning futures.

Expansion sizing per switch: the trunk shortfall against installed capacity
(headroom-adjusted by the redundancy factor) is rounded up to whole trunk
cards; if the result would push the switch past its maximum capacity times
the redundancy factor, new switches are added and the load is spread evenly
across old and new ones. Costs are trunk count times unit price plus switch
count times unit price, held as 2-digit decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal

from .config import Prices
from .errors import InputError, InvalidComparisonError
from .forecast import UtilizationSeries
from .topology import SwitchCapacity

# ceil() guard against float noise bumping exact integers up a card
_ROUNDUP_EPS = 1e-9


def roundup(value: float) -> int:
    return math.ceil(value - _ROUNDUP_EPS)


def trunks_needed(
    forecast_trunks: float,
    cap: SwitchCapacity,
    redundancy_applied_in_forecast: bool = False,
) -> int:
    """New trunks to configure, as a whole number of trunk cards.

    The forecast is divided by the redundancy factor to restore headroom
    unless the caller declares the forecast already headroom-adjusted.
    Non-positive shortfalls clamp to zero (decommissioning is out of scope).
    """
    if forecast_trunks < 0:
        raise InputError("forecast trunk count must be >= 0")
    divisor = 1.0 if redundancy_applied_in_forecast else cap.redundancy_factor
    shortfall = forecast_trunks / divisor - cap.trunks_installed
    if shortfall <= 0:
        return 0
    cards = roundup(shortfall / cap.trunks_per_card)
    return cards * cap.trunks_per_card


def new_switches_needed(trunks_to_add: int, cap: SwitchCapacity, n_existing: int) -> int:
    """Number of new switches once total trunks hit the maximum-capacity headroom."""
    if n_existing < 1:
        raise InputError("n_existing must be >= 1")
    total = trunks_to_add + cap.trunks_installed
    if total < cap.trunks_max * cap.redundancy_factor:
        return 0
    return max(0, roundup(total / cap.trunks_max) - n_existing)


def trunks_per_new_switch(
    trunks_to_add: int, cap: SwitchCapacity, n_existing: int, n_new: int
) -> tuple[float, bool]:
    """Even trunk spread across old and new switches, with a feasibility flag."""
    if n_new + n_existing == 0:
        raise InputError("cannot spread trunks over zero switches")
    spread = (trunks_to_add + cap.trunks_installed) / (n_new + n_existing)
    return spread, spread <= cap.trunks_max * cap.redundancy_factor


@dataclass(frozen=True)
class ExpansionPlan:
    """One switch's expansion requirement over a forecast horizon.

    ``month`` is the first month whose trunk demand breaches the installed
    headroom limit (demand >= installed * redundancy factor): the expansion
    must be in service before then. Sizing covers the horizon peak.
    """

    switch_id: str
    month: int | None
    trunks_to_add: int
    new_switch_count: int
    trunks_per_new_switch: float | None
    feasible: bool

    def to_dict(self) -> dict:
        return {
            "switch_id": self.switch_id,
            "month": self.month,
            "trunks_to_add": self.trunks_to_add,
            "new_switch_count": self.new_switch_count,
            "trunks_per_new_switch": self.trunks_per_new_switch,
            "feasible": self.feasible,
        }


@dataclass(frozen=True)
class CriterionBreach:
    """A month where call attempts or signaling exceed maximum-capacity headroom."""

    switch_id: str
    month: int
    criterion: str
    value: float
    limit: float

    def to_dict(self) -> dict:
        return {
            "switch_id": self.switch_id,
            "month": self.month,
            "criterion": self.criterion,
            "value": self.value,
            "limit": self.limit,
        }


@dataclass(frozen=True)
class CostReport:
    trunk_unit_price: Decimal
    switch_unit_price: Decimal
    cost_without_rehoming: Decimal
    cost_with_rehoming: Decimal
    savings: Decimal
    expansion_without: ExpansionPlan
    expansion_with: ExpansionPlan
    breaches_without: tuple[CriterionBreach, ...] = ()
    breaches_with: tuple[CriterionBreach, ...] = ()

    def to_dict(self) -> dict:
        return {
            "trunk_unit_price": float(self.trunk_unit_price),
            "switch_unit_price": float(self.switch_unit_price),
            "cost_without_rehoming": float(self.cost_without_rehoming),
            "cost_with_rehoming": float(self.cost_with_rehoming),
            "savings": float(self.savings),
            "expansion_without": self.expansion_without.to_dict(),
            "expansion_with": self.expansion_with.to_dict(),
            "breaches_without": [b.to_dict() for b in self.breaches_without],
            "breaches_with": [b.to_dict() for b in self.breaches_with],
        }


def expansion_for_series(
    series: UtilizationSeries,
    cap: SwitchCapacity,
    n_existing: int = 1,
    redundancy_applied_in_forecast: bool = False,
) -> ExpansionPlan:
    """Size the expansion one series implies: peak need, first breach month."""
    needs = [
        trunks_needed(rec.trunks, cap, redundancy_applied_in_forecast) for rec in series.months
    ]
    trunks_to_add = max(needs, default=0)
    if trunks_to_add == 0:
        return ExpansionPlan(series.switch_id, None, 0, 0, None, True)

    month = None
    headroom = cap.trunks_installed * cap.redundancy_factor
    for rec in series.months:
        if rec.trunks >= headroom:
            month = rec.n
            break

    n_new = new_switches_needed(trunks_to_add, cap, n_existing)
    spread, feasible = trunks_per_new_switch(trunks_to_add, cap, n_existing, n_new)
    return ExpansionPlan(series.switch_id, month, trunks_to_add, n_new, spread, feasible)


def expansion_cost(plan: ExpansionPlan, prices: Prices) -> Decimal:
    cost = prices.trunk_unit_price * plan.trunks_to_add
    cost += prices.switch_unit_price * plan.new_switch_count
    return cost.quantize(Decimal("0.01"))


def criterion_breaches(series: UtilizationSeries, cap: SwitchCapacity) -> tuple[CriterionBreach, ...]:
    """Months where BHCA or SS7 exceed maximum capacity times the redundancy factor."""
    f = cap.redundancy_factor
    out = []
    for rec in series.months:
        if rec.bhca > cap.bhca_max * f:
            out.append(CriterionBreach(series.switch_id, rec.n, "bhca", rec.bhca, cap.bhca_max * f))
        if rec.ss7_util > cap.ss7_max * f:
            out.append(
                CriterionBreach(series.switch_id, rec.n, "ss7", rec.ss7_util, cap.ss7_max * f)
            )
    return tuple(out)


def compare_futures(
    series_without: UtilizationSeries,
    series_with: UtilizationSeries,
    cap: SwitchCapacity,
    prices: Prices,
    n_existing: int = 1,
    redundancy_applied_in_forecast: bool = False,
) -> CostReport:
    """Price both futures of one switch and report the re-homing savings.

    Savings may be negative: a re-homing is not assumed beneficial.
    """
    if series_without.month_indices() != series_with.month_indices():
        raise InvalidComparisonError(
            f"series for {series_without.switch_id} cover different months"
        )
    exp_without = expansion_for_series(series_without, cap, n_existing, redundancy_applied_in_forecast)
    exp_with = expansion_for_series(series_with, cap, n_existing, redundancy_applied_in_forecast)
    cost_without = expansion_cost(exp_without, prices)
    cost_with = expansion_cost(exp_with, prices)
    return CostReport(
        trunk_unit_price=prices.trunk_unit_price,
        switch_unit_price=prices.switch_unit_price,
        cost_without_rehoming=cost_without,
        cost_with_rehoming=cost_with,
        savings=cost_without - cost_with,
        expansion_without=exp_without,
        expansion_with=exp_with,
        breaches_without=criterion_breaches(series_without, cap),
        breaches_with=criterion_breaches(series_with, cap),
    )
