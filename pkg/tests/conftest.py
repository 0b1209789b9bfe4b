import pytest

from sl3char.exactlinalg import random_pair

_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def pairs():
    """A fixed pool of exact random SL(3) pairs."""
    return [random_pair(2024, k) for k in range(12)]


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, title, ok, detail)``.

    Lines are echoed immediately (visible with ``-s``) and repeated in the
    terminal summary so they always reach the log."""
    def record(n: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        request.config.stash.setdefault(_ACCEPTANCE, {})[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
