"""Shared fixtures builders and independent oracles.

The Erlang B oracle computes the direct summation B = (E^m/m!) / sum_k E^k/k!
in exact rational arithmetic; it shares no code with the recurrence it checks.
"""

from __future__ import annotations

import random
from fractions import Fraction

from rehome_planner.forecast import SubscriberForecast, MonthValue
from rehome_planner.rehoming import build_scenario
from rehome_planner.topology import (
    ControllerKind,
    ControllerNode,
    Market,
    Mss,
    NetworkTopology,
    SwitchCapacity,
    SwitchKind,
    SwitchNode,
)


def erlang_b_oracle(offered: float, lines: int) -> Fraction:
    """Direct-summation Erlang B in exact rationals (independent of the recurrence).

    B = (E^m/m!) / sum_{k=0..m} E^k/k!, evaluated over the common denominator
    q^m * m! (with E = p/q the exact binary value of the float), so the whole
    computation is integer arithmetic with a single reduction at the end.
    """
    e = Fraction(offered)
    p, q = e.numerator, e.denominator
    m = lines
    falling = [1] * (m + 1)  # falling[k] = m!/k!
    for k in range(m, 0, -1):
        falling[k - 1] = falling[k] * k
    total = 0
    term = 0
    p_pow = 1
    q_pow = q**m
    for k in range(m + 1):
        term = p_pow * q_pow * falling[k]
        total += term
        p_pow *= p
        q_pow //= q
    return Fraction(term, total)


def erlang_b_oracle_required_lines(offered: float, target: float) -> int:
    if offered <= 0:
        return 0
    m = 0
    while erlang_b_oracle(offered, m) > Fraction(target):
        m += 1
    return m


def cap(
    trunks_installed=1280,
    trunks_max=2000,
    bhca_installed=1_200_000,
    bhca_max=1_500_000,
    ss7_installed=0.9,
    ss7_max=1.0,
    trunks_per_card=1,
    redundancy_factor=0.85,
) -> SwitchCapacity:
    return SwitchCapacity(
        bhca_installed=bhca_installed,
        bhca_max=bhca_max,
        trunks_installed=trunks_installed,
        trunks_max=trunks_max,
        ss7_installed=ss7_installed,
        ss7_max=ss7_max,
        trunks_per_card=trunks_per_card,
        redundancy_factor=redundancy_factor,
    )


def mgw(switch_id, market_id, mss_id, capacity=None) -> SwitchNode:
    return SwitchNode(
        id=switch_id,
        kind=SwitchKind.MGW_3G,
        market_id=market_id,
        mss_id=mss_id,
        capacity=capacity or cap(),
    )


def msc(switch_id, market_id, capacity=None) -> SwitchNode:
    return SwitchNode(
        id=switch_id,
        kind=SwitchKind.MSC_2G,
        market_id=market_id,
        mss_id=None,
        capacity=capacity or cap(),
    )


def controller(ctrl_id, kind, homed_to, trunks=40.0, erlang=600.0) -> ControllerNode:
    return ControllerNode(
        id=ctrl_id,
        kind=kind,
        homed_to=frozenset(homed_to),
        trunks=trunks,
        traffic_erlang=erlang,
    )


def topo(markets, mss, switches, controllers) -> NetworkTopology:
    return NetworkTopology(
        markets=tuple(markets),
        mss=tuple(mss),
        switches=tuple(switches),
        controllers=tuple(controllers),
    )


def two_markets():
    return [Market("m1", "Market One"), Market("m2", "Market Two")]


def model_fixture(number: int):
    """(topology, scenario) pair whose shape is exactly model ``number``."""
    markets = two_markets()
    if number == 1:
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA"})), Mss("MSS-B", frozenset({"GB"}))],
            [mgw("GA", "m1", "MSS-A"), mgw("GB", "m1", "MSS-B")],
            [controller("c1", ControllerKind.RNC, {"GA"})],
        )
        return t, build_scenario(t, ["c1"], ["GB"], 1)
    if number == 2:
        t = topo(
            markets,
            [],
            [msc("SA", "m1"), msc("SB", "m1")],
            [controller("c1", ControllerKind.BSC, {"SA"})],
        )
        return t, build_scenario(t, ["c1"], ["SB"], 1)
    if number == 3:
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA"}))],
            [mgw("GA", "m1", "MSS-A"), msc("SB", "m1")],
            [controller("c1", ControllerKind.BSC, {"GA"})],
        )
        return t, build_scenario(t, ["c1"], ["SB"], 1)
    if number == 4:
        t = topo(
            markets,
            [Mss("MSS-B", frozenset({"GB"}))],
            [msc("SA", "m1"), mgw("GB", "m1", "MSS-B")],
            [controller("c1", ControllerKind.BSC, {"SA"})],
        )
        return t, build_scenario(t, ["c1"], ["GB"], 1)
    if number == 5:
        t = topo(
            markets,
            [Mss("MSS-B", frozenset({"GB1", "GB2", "GBX"}))],
            [
                msc("SA", "m1"),
                mgw("GB1", "m1", "MSS-B"),
                mgw("GB2", "m1", "MSS-B"),
                mgw("GBX", "m2", "MSS-B"),
            ],
            [controller("c1", ControllerKind.BSC, {"SA"})],
        )
        return t, build_scenario(t, ["c1"], ["GB1", "GB2"], 1)
    if number == 6:
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA"})), Mss("MSS-B", frozenset({"GB1", "GB2", "GBX"}))],
            [
                mgw("GA", "m1", "MSS-A"),
                mgw("GB1", "m1", "MSS-B"),
                mgw("GB2", "m1", "MSS-B"),
                mgw("GBX", "m2", "MSS-B"),
            ],
            [controller("c1", ControllerKind.RNC, {"GA"})],
        )
        return t, build_scenario(t, ["c1"], ["GB1", "GB2"], 1)
    if number == 7:
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA1", "GA2", "GAX"}))],
            [
                mgw("GA1", "m1", "MSS-A"),
                mgw("GA2", "m1", "MSS-A"),
                mgw("GAX", "m2", "MSS-A"),
                msc("SB", "m1"),
            ],
            [controller("c1", ControllerKind.BSC, {"GA1", "GA2"})],
        )
        return t, build_scenario(t, ["c1"], ["SB"], 1)
    if number == 8:
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA1", "GA2"})), Mss("MSS-B", frozenset({"GB1", "GB2"}))],
            [
                mgw("GA1", "m1", "MSS-A"),
                mgw("GA2", "m1", "MSS-A"),
                mgw("GB1", "m1", "MSS-B"),
                mgw("GB2", "m2", "MSS-B"),
            ],
            [controller("c1", ControllerKind.RNC, {"GA1", "GA2"})],
        )
        return t, build_scenario(t, ["c1"], ["GB1"], 1)
    if number == 9:
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA1", "GA2"})), Mss("MSS-B", frozenset({"GB1", "GB2"}))],
            [
                mgw("GA1", "m1", "MSS-A"),
                mgw("GA2", "m1", "MSS-A"),
                mgw("GB1", "m1", "MSS-B"),
                mgw("GB2", "m1", "MSS-B"),
            ],
            [controller("c1", ControllerKind.RNC, {"GA1", "GA2"})],
        )
        return t, build_scenario(t, ["c1"], ["GB1", "GB2"], 1)
    raise ValueError(number)


def invalid_fixture(name: str):
    """(topology, scenario, expected violation rule) for a known-bad shape."""
    markets = two_markets()
    if name == "same-mss-target":
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA1", "GA2"}))],
            [mgw("GA1", "m1", "MSS-A"), mgw("GA2", "m1", "MSS-A")],
            [controller("c1", ControllerKind.RNC, {"GA1"})],
        )
        return t, build_scenario(t, ["c1"], ["GA2"], 1), "same-mss-target"
    if name == "cross-market-target":
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA"})), Mss("MSS-B", frozenset({"GB"}))],
            [mgw("GA", "m1", "MSS-A"), mgw("GB", "m2", "MSS-B")],
            [controller("c1", ControllerKind.RNC, {"GA"})],
        )
        return t, build_scenario(t, ["c1"], ["GB"], 1), "cross-market-target"
    if name == "partial-target-set":
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA"})), Mss("MSS-B", frozenset({"GB1", "GB2"}))],
            [
                mgw("GA", "m1", "MSS-A"),
                mgw("GB1", "m1", "MSS-B"),
                mgw("GB2", "m1", "MSS-B"),
            ],
            [controller("c1", ControllerKind.RNC, {"GA"})],
        )
        return t, build_scenario(t, ["c1"], ["GB1"], 1), "partial-target-set"
    if name == "mixed-kind-source":
        t = topo(
            markets,
            [Mss("MSS-A", frozenset({"GA"})), Mss("MSS-B", frozenset({"GB"}))],
            [mgw("GA", "m1", "MSS-A"), msc("SA", "m1"), mgw("GB", "m1", "MSS-B")],
            [
                controller("c1", ControllerKind.BSC, {"GA"}),
                controller("c2", ControllerKind.BSC, {"SA"}),
            ],
        )
        return t, build_scenario(t, ["c1", "c2"], ["GB"], 1), "mixed-kind-source"
    raise ValueError(name)


def random_topology(rng: random.Random, tag: str = "") -> NetworkTopology:
    """Small structurally-valid topology with randomized homing and traffic."""
    markets = [Market(f"m{tag}1", "one")]
    n_mss = rng.randint(1, 3)
    mss_nodes = []
    switches = []
    for i in range(n_mss):
        mss_id = f"MSS{tag}{i}"
        n_mgw = rng.randint(1, 3)
        mgw_ids = [f"G{tag}{i}x{j}" for j in range(n_mgw)]
        mss_nodes.append(Mss(mss_id, frozenset(mgw_ids)))
        for gid in mgw_ids:
            switches.append(mgw(gid, f"m{tag}1", mss_id))
    for i in range(rng.randint(0, 2)):
        switches.append(msc(f"S{tag}{i}", f"m{tag}1"))

    controllers = []
    n_ctrl = rng.randint(1, 6)
    for i in range(n_ctrl):
        kind = rng.choice([ControllerKind.RNC, ControllerKind.BSC])
        if kind is ControllerKind.RNC:
            eligible = [s for s in switches if s.kind is SwitchKind.MGW_3G]
        else:
            eligible = list(switches)
        home = rng.choice(eligible)
        if home.kind is SwitchKind.MGW_3G and rng.random() < 0.3:
            # multi-home across every in-market MGW of that MSS
            siblings = [
                s.id
                for s in switches
                if s.kind is SwitchKind.MGW_3G
                and s.mss_id == home.mss_id
                and s.market_id == home.market_id
            ]
            homed = set(siblings)
        else:
            homed = {home.id}
        controllers.append(
            controller(
                f"c{tag}{i}",
                kind,
                homed,
                trunks=rng.randint(5, 400),
                erlang=round(rng.uniform(10.0, 5000.0), 3),
            )
        )
    return topo(markets, mss_nodes, switches, controllers)


def forecast_for(switch_id: str, trunk_values, divisor: float = 15.0, ens: float = 0.03125):
    """Subscriber forecast whose linear trunk series equals ``trunk_values`` exactly."""
    months = tuple(
        MonthValue(n=i + 1, subscribers=t * divisor / ens) for i, t in enumerate(trunk_values)
    )
    return SubscriberForecast(switch_id=switch_id, months=months)
