"""Tests for strict group and crossed-module actions."""

import pytest

from app import catalog
from app.actions.strict import (
    StrictAction,
    action_from_object_permutations,
    trivial_crossed_module_action,
    trivial_group_action,
)
from app.errors import NotAStrictAction
from app.groupoids.groupoid_bridge import discrete_groupoid, pair_groupoid
from app.groupoids.groups import cyclic_group


class TestGroupActions:
    def test_swap(self, swap_action):
        assert not swap_action.is_two_group
        assert swap_action.functor(1).object_map == (1, 0)
        assert swap_action.right_object(0, 1) == 1

    def test_identity_must_act_trivially(self):
        with pytest.raises(NotAStrictAction):
            action_from_object_permutations(discrete_groupoid(["p", "q"]), cyclic_group(2), [(1, 0), (1, 0)])

    def test_needs_a_group(self):
        X = discrete_groupoid(["p"])
        with pytest.raises(NotAStrictAction):
            StrictAction(groupoid=X, phi_objects=((0,),), phi_arrows=((0,),))

    def test_theta_needs_a_crossed_module(self):
        X = discrete_groupoid(["p"])
        with pytest.raises(NotAStrictAction):
            StrictAction(
                groupoid=X,
                group=cyclic_group(2),
                phi_objects=((0,), (0,)),
                phi_arrows=((0,), (0,)),
                theta=((0,), (0,)),
            )

    def test_pair_groupoid_arrows_follow_objects(self):
        A = action_from_object_permutations(pair_groupoid(("p", "q")), cyclic_group(2), [(0, 1), (1, 0)])
        moved = A.phi_arrows[1]
        X = A.groupoid
        for a in range(len(X.arrows)):
            assert X.src[moved[a]] == 1 - X.src[a]

    def test_trivial_action(self, pair2):
        A = trivial_group_action(pair2, cyclic_group(3))
        assert all(row == tuple(range(4)) for row in A.phi_arrows)


class TestCrossedModuleActions:
    def test_theta_on_the_generator(self):
        A = catalog.xm0_on_c2()
        assert A.is_two_group
        assert A.G.order == 1
        assert A.theta_at(1, 0) == 1

    def test_theta_defaults_to_units(self, c2, xm0):
        A = trivial_crossed_module_action(c2, xm0)
        assert A.theta_at(1, 0) == c2.unit[0]

    def test_theta_of_identity_is_a_unit(self, c2, xm0):
        with pytest.raises(NotAStrictAction):
            trivial_crossed_module_action(c2, xm0, theta=[(1,), (1,)])
