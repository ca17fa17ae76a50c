import os
from pathlib import Path

import hypothesis
import numpy as np
import pytest

from src.srl_model.body_model import default_human, default_limbs
from src.srl_simulator.scenario_loader import parse_scenario

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))

SCENARIOS_DIR = Path(__file__).resolve().parent.parent / "config" / "scenarios"


def scenario_file(name: str) -> Path:
    return SCENARIOS_DIR / f"{name}.json"


@pytest.fixture
def human():
    return default_human()


@pytest.fixture
def limbs(human):
    return default_limbs(human)


@pytest.fixture(scope="session")
def case_1_1():
    return parse_scenario(scenario_file("case_1_1"), seed=42)


@pytest.fixture(scope="session")
def case_2_1():
    return parse_scenario(scenario_file("case_2_1"), seed=42)


@pytest.fixture(scope="session")
def scenario_path():
    return scenario_file
