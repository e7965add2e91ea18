from fractions import Fraction as F

import pytest

from qojets import surface_from_gamma, surface_from_lambda
from qojets.suites import cusp_surface, degree_eight_surface, three_two_surface

from acceptance_log import LINES as ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def cusp():
    return cusp_surface()


@pytest.fixture(scope="session")
def s42():
    return three_two_surface()


@pytest.fixture(scope="session")
def s44():
    return degree_eight_surface()


@pytest.fixture(scope="session")
def s5():
    """((z^2 - x1^3 x2^2)^2 - x1^6 x2^4 z)^3 - x1^23 x2^14 z."""
    return surface_from_gamma([(F(3, 2), 1), (F(15, 4), F(5, 2)), (F(49, 6), 5)])


@pytest.fixture(scope="session")
def z12():
    """z^2 - x1 x2."""
    return surface_from_lambda([(F(1, 2), F(1, 2))])


@pytest.fixture(scope="session")
def diag_two():
    """(z^2 - x1 x2)^2 - x1^3 x2^2 z."""
    return surface_from_lambda([(F(1, 2), F(1, 2)), (F(5, 4), F(3, 4))])


@pytest.fixture(autouse=True)
def _cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("QOJETS_CACHE_DIR", str(tmp_path / "cache"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
