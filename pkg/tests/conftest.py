import json
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from krel.generators import Gen, GeneratorConfig  # noqa: E402

settings.register_profile(
    "krel",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("krel")


@pytest.fixture(scope="session")
def golden():
    return json.loads((HERE / "golden" / "derived.json").read_text())


@pytest.fixture
def make_gen():
    def factory(seed=0, max_dim=4, **kw):
        return Gen(np.random.default_rng(seed), GeneratorConfig(seed=seed, maxDim=max_dim, **kw))

    return factory


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
