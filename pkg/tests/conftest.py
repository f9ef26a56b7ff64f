import pytest

from exclusivity import _backend

BACKENDS = [pytest.param(_backend.fallback, id="python")]
if _backend.compiled is not None:
    BACKENDS.append(pytest.param(_backend.compiled, id="compiled"))


@pytest.fixture(params=BACKENDS)
def kernels(request, monkeypatch):
    """Run the test once per available kernel backend."""
    monkeypatch.setattr(_backend, "kernels", request.param)
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
