import pytest
from hypothesis import HealthCheck, settings

from amalgam_cgt.images import image

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def f1():
    return image("F1")


@pytest.fixture(scope="session")
def f3():
    return image("F3")


@pytest.fixture(scope="session")
def xstar():
    return image("Xstar")


@pytest.fixture(scope="session")
def zstar():
    return image("Zstar")


@pytest.fixture(scope="session")
def criterion_log(request):
    lines = getattr(request.config, "_criterion_lines", None)
    if lines is None:
        lines = request.config._criterion_lines = []
    return lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
