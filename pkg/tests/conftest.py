import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from subracks import catalog  # noqa: E402
from subracks.groups import conjugacy_classes, is_p_group  # noqa: E402

P_GROUPS = [n for n in catalog.names() if is_p_group(catalog.get(n)) is not None]
NON_P_GROUPS = [n for n in catalog.names() if is_p_group(catalog.get(n)) is None]


def gen(G, name):
    """Id of the named generator of a catalog group."""
    entry = catalog.CATALOG[G.name]
    return G.generators[entry.names.index(name)]


def class_containing(G, g):
    for C in conjugacy_classes(G):
        if g in C.members:
            return C
    raise KeyError(g)


@pytest.fixture(scope="session")
def D4():
    return catalog.get("D4")


@pytest.fixture(scope="session")
def D8():
    return catalog.get("D8")


@pytest.fixture(scope="session")
def Q8():
    return catalog.get("Q8")


@pytest.fixture(scope="session")
def Heis27():
    return catalog.get("Heis27")


@pytest.fixture(scope="session")
def S3():
    return catalog.get("S3")


@pytest.fixture(scope="session")
def d8_reflections(D8):
    """Dihedral group of order 16: ids of s, t and the class of t."""
    s, t = gen(D8, "s"), gen(D8, "t")
    return s, t, class_containing(D8, t)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {msg}")
