import pytest

from omlkit.catalog import OML_NAMES, catalog
from omlkit.lattice import boolean_algebra, horizontal_sum, product


@pytest.fixture(scope="session")
def mo2():
    return catalog("mo2")


@pytest.fixture(scope="session")
def b4():
    return catalog("b4")


@pytest.fixture(scope="session")
def b8():
    return catalog("b8")


@pytest.fixture(scope="session")
def mo2xb2():
    return catalog("mo2xb2")


@pytest.fixture(scope="session")
def mo2xb4():
    return product(horizontal_sum(2), boolean_algebra(2))


SMALL_OMLS = [n for n in OML_NAMES if len(catalog(n)) <= 24]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
