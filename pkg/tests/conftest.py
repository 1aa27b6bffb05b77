import pytest

from gmmh import _purepy

try:
    from gmmh import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNELS = [pytest.param(_purepy, id="python")]
if _ckernels is not None:
    KERNELS.append(pytest.param(_ckernels, id="cython"))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=KERNELS)
def kernels(request, monkeypatch):
    """Run the test once per available backend."""
    from gmmh import _backend

    monkeypatch.setattr(_backend, "kernels", request.param)
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
