"""Tests for the named fixtures and seeded random instances."""

import pytest

from app import catalog
from app.groupoids.groupoid_bridge import nerve
from app.groupoids.two_group import classifying_sizes
from app.simplicial.kan_verify import classify_n_groupoid


def test_fixtures_by_name():
    assert catalog.fixture("XM2").name == "XM2"
    with pytest.raises(KeyError):
        catalog.fixture("XM9")


def test_seeded_generation_is_deterministic():
    a = catalog.random_crossed_module(catalog.make_rng(7))
    b = catalog.random_crossed_module(catalog.make_rng(7))
    assert a.name == b.name
    assert a.bnd == b.bnd


@pytest.mark.parametrize("seed", range(100))
def test_random_groupoid_nerves_are_1_groupoids(seed):
    X = catalog.random_groupoid(catalog.make_rng(seed))
    assert len(X.arrows) <= 12
    assert classify_n_groupoid(nerve(X, 3), 1).holds


@pytest.mark.parametrize("seed", range(5))
def test_random_actions_validate(seed):
    A = catalog.random_strict_action(catalog.make_rng(seed))
    assert A.G.order in (2, 3)


def test_crossed_module_choices_reach_order_8():
    choices = catalog.crossed_module_choices(max_order=8)
    assert {XM.G.order for XM in choices} >= {2, 3, 4, 6, 8}
    assert all(XM.H.order <= 8 for XM in choices)
    assert any(XM.H.order == 8 for XM in choices)


def test_crossed_module_choices_respect_the_cell_budget():
    choices = catalog.crossed_module_choices(max_order=8, max_cells=16384)
    assert {XM.G.order for XM in choices} >= {4, 6, 8}
    assert all(classifying_sizes(XM.G.order, XM.H.order, 4)[-1] <= 16384 for XM in choices)
    assert any(XM.H.order > 1 and XM.G.order == 4 for XM in choices)
    assert any(XM.H.order == 4 for XM in choices)


def test_an_empty_budget_is_rejected():
    with pytest.raises(ValueError):
        catalog.random_crossed_module(catalog.make_rng(0), max_cells=1)
