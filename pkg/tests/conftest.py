import numpy as np
import pytest

from reconlab.constructors import dft_uwp, random_protocol, random_system


@pytest.fixture
def dft422():
    return dft_uwp(4, 2, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def small_shapes(rng, n, max_m=5, max_l=3, max_d=6):
    """Random (m, l, d) with l <= d <= m*l, in the ranges used by the tests."""
    out = []
    while len(out) < n:
        m = int(rng.integers(2, max_m + 1))
        l = int(rng.integers(1, max_l + 1))
        d = int(rng.integers(l, min(m * l, max_d) + 1))
        if d >= l:
            out.append((m, l, d))
    return out


def some_protocols(n, seed=0, **kw):
    rng = np.random.default_rng(seed)
    return [random_protocol(*shape, seed=rng) for shape in small_shapes(rng, n, **kw)]


def some_systems(n, seed=0, **kw):
    rng = np.random.default_rng(seed)
    return [random_system(*shape, seed=rng) for shape in small_shapes(rng, n, **kw)]


_CRITERIA: dict = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        num = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {num}: {_CRITERIA[name]}  {label}")
