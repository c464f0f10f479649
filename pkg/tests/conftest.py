import contextlib

import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Context manager that records one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def run(k, text):
        notes = []
        try:
            yield notes
        except BaseException:
            _LINES.append(f"FAIL criterion {k}: {text}")
            raise
        extra = f" ({'; '.join(notes)})" if notes else ""
        line = f"PASS criterion {k}: {text}{extra}"
        _LINES.append(line)
        print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
