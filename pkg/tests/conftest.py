import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from rehome_planner import _kernels
from rehome_planner.config import config_from_dict
from rehome_planner.forecast import forecasts_from_list
from rehome_planner.topology import topology_from_dict

DEMO_DIR = Path(__file__).resolve().parent.parent / "demo"


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compilation happens once up front, outside any timed assertion.
    _kernels.warmup()


@pytest.fixture(scope="session")
def demo_dir() -> Path:
    return DEMO_DIR


@pytest.fixture(scope="session")
def demo_topology():
    return topology_from_dict(json.loads((DEMO_DIR / "topology.json").read_text()))


@pytest.fixture(scope="session")
def demo_forecasts():
    return forecasts_from_list(json.loads((DEMO_DIR / "forecast.json").read_text()))


@pytest.fixture(scope="session")
def demo_config():
    return config_from_dict(json.loads((DEMO_DIR / "config.json").read_text()))


@pytest.fixture(scope="session")
def demo_scenario_doc():
    return json.loads((DEMO_DIR / "scenario.json").read_text())
