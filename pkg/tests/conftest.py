import numpy as np
import pytest

from twotier import _pysplit, emit_synthetic, kernels

BACKENDS = [pytest.param(_pysplit, id="numpy")]
if kernels.compiled is not None:
    BACKENDS.append(pytest.param(kernels.compiled, id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def synth():
    return emit_synthetic()


@pytest.fixture
def rng():
    return np.random.default_rng(20221)


# -- one line per acceptance criterion in the terminal summary ----------------

_criteria: dict[str, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of the acceptance criterion checked by the test."""

    def register(label):
        _criteria[request.node.nodeid] = (label, "")
        return label

    return register


def pytest_runtest_makereport(item, call):
    if call.when == "call" and item.nodeid in _criteria:
        label, _ = _criteria[item.nodeid]
        outcome = "PASS" if call.excinfo is None else (
            "SKIP" if call.excinfo.errisinstance(pytest.skip.Exception) else "FAIL")
        _criteria[item.nodeid] = (label, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_criteria.values()):
        terminalreporter.write_line(f"{outcome or 'SKIP':4}  {label}")
