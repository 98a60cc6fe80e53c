import numpy as np
import pytest
from hypothesis import strategies as st


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def random_unit(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_ball(rng, n):
    return random_unit(rng, n) * rng.uniform(0, 1, size=(n, 1)) ** (1 / 3)


finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(finite, finite, finite).filter(lambda v: np.linalg.norm(v) > 1e-3)


@st.composite
def unit_axes(draw):
    v = np.array(draw(vec3))
    return v / np.linalg.norm(v)


@st.composite
def bloch_vectors(draw):
    v = np.array(draw(vec3))
    r = draw(st.floats(0, 1))
    return r * v / np.linalg.norm(v)


angles = st.floats(-4 * np.pi, 4 * np.pi, allow_nan=False)


_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    key = mark.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _acceptance[key] = report.passed and not report.skipped


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), passed in sorted(_acceptance.items()):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
