"""Tests for invariant objects and free quotients."""

import pytest

from app.actions.bundles import strict_action_groupoid
from app.actions.orbits import free_quotient, invariant_objects, stabilizer
from app.actions.strict import action_from_object_permutations, trivial_group_action
from app.errors import ActionNotFree
from app.groupoids.groupoid_bridge import cyclic_groupoid, discrete_groupoid, groupoids_isomorphic
from app.groupoids.groups import cyclic_group


def test_swap_has_no_invariant_objects(swap_bundle):
    assert invariant_objects(swap_bundle) == []


def test_trivial_action_is_invariant():
    A = trivial_group_action(discrete_groupoid(["p"]), cyclic_group(2))
    assert invariant_objects(strict_action_groupoid(A)) == [0]


def test_stabilizer(swap_action):
    assert stabilizer(swap_action, 0) == [0]


def test_quotient_of_swap(swap_action):
    Q, f = free_quotient(swap_action)
    assert len(Q.objects) == 1
    assert len(Q.arrows) == 1
    assert f.target.sizes == (1, 1, 1, 1)


def test_quotient_of_pair_groupoid(pair2):
    A = action_from_object_permutations(pair2, cyclic_group(2), [(0, 1), (1, 0)])
    Q, _ = free_quotient(A)
    assert groupoids_isomorphic(Q, cyclic_groupoid(2))


def test_fixed_points_block_the_quotient():
    A = trivial_group_action(discrete_groupoid(["p"]), cyclic_group(2))
    with pytest.raises(ActionNotFree):
        free_quotient(A)
