import pytest
from hypothesis import settings

from rankgray import hamgen

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture(scope="session")
def a7():
    return hamgen.base_case_a7()


@pytest.fixture(scope="session")
def a9(a7):
    return hamgen.inductive_step(a7)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
