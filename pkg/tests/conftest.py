import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from schattencs.random_matrices import complex_gaussian

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def gaussian_family(rng, d, n):
    return tuple(complex_gaussian(rng, (d, d)) for _ in range(n))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
