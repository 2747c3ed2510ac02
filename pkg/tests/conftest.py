import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("repo", deadline=None, derandomize=True)
settings.load_profile("repo")

# criterion number -> (outcome, detail); filled by tests marked ``criterion``
_verdicts: dict[int, tuple[str, str]] = {}
_details: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.fixture
def detail(request):
    """Callable that attaches a one-line summary to the current criterion."""
    marker = request.node.get_closest_marker("criterion")

    def note(text: str) -> None:
        _details[marker.args[0]] = text

    return note


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    n = marker.args[0]
    _verdicts[n] = ("PASS" if report.passed else "FAIL", _details.get(n, ""))


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(_verdicts):
        verdict, text = _verdicts[n]
        terminalreporter.write_line(f"criterion {n:>2}: {verdict}  {text}".rstrip())
