import os

import pytest
from hypothesis import HealthCheck, settings

from ccsp import ApprovalProfile, Axis, MisrepProfile, ThieleWeights

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("deep", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def p1():
    return MisrepProfile([[0, 1, 2], [2, 1, 0]])


@pytest.fixture
def p1_axis():
    return Axis([1, 2, 3])


@pytest.fixture
def p2():
    return ApprovalProfile(3, [{1}, {1, 2}, {2, 3}])


@pytest.fixture
def pav3():
    return ThieleWeights.uniform("pav", 3, 3)


@pytest.fixture
def p3():
    return MisrepProfile([[0, 1, 2, 1], [2, 1, 0, 1]])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.__dict__.get("acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
