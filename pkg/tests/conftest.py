import functools

import pytest

from twrgraph.catalog import Catalog
from twrgraph.graph import CosetGraph
from twrgraph.rsub import construct_R
from twrgraph.wreath import Wreath


@functools.lru_cache(maxsize=None)
def catalog(q):
    return Catalog.for_q(q)


@functools.lru_cache(maxsize=None)
def rdata(q):
    return construct_R(catalog(q))


@functools.lru_cache(maxsize=None)
def graph(q):
    return CosetGraph(catalog(q), rdata(q))


@pytest.fixture(scope="session")
def cat4():
    return catalog(4)


@pytest.fixture(scope="session")
def cat5():
    return catalog(5)


@pytest.fixture(scope="session")
def W4():
    return Wreath(catalog(4))


@pytest.fixture(scope="session")
def G4():
    return graph(4)


@pytest.fixture(scope="session")
def G5():
    return graph(5)


# -- acceptance summary --------------------------------------------------------
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(n, ok, detail=""):
    ACCEPTANCE[n] = (bool(ok), detail)
    print("criterion %d: %s %s" % (n, "PASS" if ok else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
