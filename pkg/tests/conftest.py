import pytest
from hypothesis import settings, strategies as st

from ordlaw.ordinals import ordinals_of_norm

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def ordinals(max_norm: int = 8):
    """Ordinals below e0 drawn by norm."""
    return st.integers(0, max_norm).flatmap(lambda n: st.sampled_from(ordinals_of_norm(n)))


@pytest.fixture(scope="session")
def small_ordinals():
    return [x for n in range(9) for x in ordinals_of_norm(n)]


# one line per acceptance criterion, filled in by test_acceptance
CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
