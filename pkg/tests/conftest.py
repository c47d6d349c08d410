from pathlib import Path

import pytest

from jplus.catalog import catalog
from jplus.coeffs import JSet

DATA = Path(__file__).resolve().parents[1] / "src" / "jplus" / "data"

JSETS = {
    "none": JSet.empty(),
    "2": JSet.of([2]),
    "3": JSet.of([3]),
    "2,3": JSet.of([2, 3]),
    "all": JSet.all(),
}


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def groups():
    return catalog()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    The test calls ``criterion(label, limit)`` and gets back a recorder; the
    recorder is told the elapsed time and whether the checks held.
    """
    state = {}

    def start(label: str, limit: float):
        state.update(label=label, limit=limit)
        return state

    yield start
    if "label" in state:
        ok = request.node.rep_call.passed if hasattr(request.node, "rep_call") else False
        elapsed = state.get("elapsed")
        timing = f"{elapsed:.3f}s" if elapsed is not None else "n/a"
        line = f"{'PASS' if ok else 'FAIL'}  {state['label']}  [{timing} / limit {state['limit']}s]"
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
