import pytest

from veronese_lab.fields import PrimeField

_VERDICTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_VERDICTS] = []


@pytest.fixture
def K():
    return PrimeField(32003)


@pytest.fixture
def record_verdict(request):
    """Collect one line per acceptance criterion for the terminal summary."""
    return request.config.stash[_VERDICTS].append


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[_VERDICTS]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
