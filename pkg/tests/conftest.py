import pytest

from ahg import _accel
from ahg.algebra import dihedral_group, moufang_extension
from ahg.hypergraph import build

ACCEPTANCE_LINES = []


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setattr(_accel, "USE_NUMBA", request.param == "numba")
    return request.param


@pytest.fixture(scope="session")
def moufang():
    cache = {}

    def get(n):
        if n not in cache:
            group, partition = dihedral_group(n)
            loop = moufang_extension(group)
            cache[n] = (group, partition, loop, build(loop))
        return cache[n]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
