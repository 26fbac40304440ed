import pytest

from formprime.equiv import build_classes
from formprime.search import SearchConfig, run_search


@pytest.fixture(scope="session")
def hits():
    return run_search(SearchConfig(100_000, 30))


@pytest.fixture(scope="session")
def classes(hits):
    return build_classes(hits)


ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion(capsys):
    """report(n, ok, detail): record and print one acceptance line."""

    def report(n, ok, detail):
        line = f"{'PASS' if ok is True else 'FAIL' if ok is False else ok}  criterion {n}: {detail}"
        ACCEPTANCE.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
