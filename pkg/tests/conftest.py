import os

import hypothesis
import numpy as np
import pytest

from fusion import build_gabor_fusion
from helpers import example_windows
from utilities import Config

np.seterr(all="warn")

hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def example_frame():
    """Rows 1_{1,2,4}/√3 and δ_3 in C^7 over the full lattice."""
    return build_gabor_fusion(example_windows(), 1.0)


@pytest.fixture(autouse=True)
def fresh_settings():
    Config._config_data = None
    yield
    Config._config_data = None
