"""
Shared fixtures: the named catalog instances and their complexes.
"""

from pathlib import Path

import pytest

from app import catalog
from app.actions.bundles import strict_action_groupoid
from app.groupoids.groupoid_bridge import nerve
from app.groupoids.two_group import classifying_2group

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture
def c2():
    return catalog.c2()


@pytest.fixture
def pair2():
    return catalog.pair2()


@pytest.fixture
def xm0():
    return catalog.xm0()


@pytest.fixture
def xm1():
    return catalog.xm1()


@pytest.fixture
def xm2():
    return catalog.xm2()


@pytest.fixture
def swap_action():
    return catalog.swap_action()


@pytest.fixture
def nerve_c2(c2):
    return nerve(c2, 3)


@pytest.fixture
def nerve_pair2(pair2):
    return nerve(pair2, 3)


@pytest.fixture(scope="session")
def bg_xm0():
    return classifying_2group(catalog.xm0(), 4)


@pytest.fixture(scope="session")
def bg_xm2():
    return classifying_2group(catalog.xm2(), 4)


@pytest.fixture(scope="session")
def swap_bundle():
    return strict_action_groupoid(catalog.swap_action(), 3)


@pytest.fixture
def rng():
    return catalog.make_rng()
