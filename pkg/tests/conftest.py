import pytest

from infometer import _backend, _pure

KERNELS = [pytest.param(_pure, id="pure")]
try:
    from infometer import _kernel
except ImportError:  # pragma: no cover
    _kernel = None
else:
    KERNELS.insert(0, pytest.param(_kernel, id="compiled"))


@pytest.fixture(params=KERNELS)
def kernel(request, monkeypatch):
    """Run the test once per available block-counting kernel."""
    monkeypatch.setattr(_backend, "kernel", request.param)
    return request.param


ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::" in report.nodeid:
        name = report.nodeid.split("::", 1)[1]
        ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(ACCEPTANCE.items()):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
