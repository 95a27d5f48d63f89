"""Tests for fibrations built from actions and their fibers."""

import pytest

from app import catalog
from app.actions.bundles import (
    action_groupoid,
    bundle_isomorphism,
    fiber,
    fiber_groupoid,
    fiber_with_projection,
    make_bundle,
    strict_2group_action_groupoid,
    strict_action_groupoid,
    trivial_bundle,
)
from app.actions.strict import trivial_crossed_module_action, trivial_group_action
from app.errors import InvalidIndex, NotAFibration, NotAStrictAction
from app.groupoids.groupoid_bridge import discrete_groupoid, groupoids_isomorphic, nerve, trivial_groupoid
from app.groupoids.groups import cyclic_group
from app.simplicial.core import constant_map, point
from app.simplicial.hom_search import isomorphic

GROUP_ACTIONS = {
    "SwapAct": catalog.swap_action,
    "C2 on Pair2": lambda: trivial_group_action(catalog.pair2(), cyclic_group(2)),
    "C2 on two points": lambda: trivial_group_action(discrete_groupoid(["p", "q"]), cyclic_group(2)),
}

# Level 4 of the XM2 action complex is too large to build in a unit test
CROSSED_MODULE_ACTIONS = {
    "XM0 on C2": (catalog.xm0_on_c2, 4),
    "XM0 trivially on C2": (lambda: trivial_crossed_module_action(catalog.c2(), catalog.xm0()), 4),
    "XM1 trivially on C2": (lambda: trivial_crossed_module_action(catalog.c2(), catalog.xm1()), 4),
    "XM2 trivially on C2": (lambda: trivial_crossed_module_action(catalog.c2(), catalog.xm2()), 3),
}


class TestActionGroupoid:
    def test_swap_is_the_pair_groupoid(self, swap_action, pair2):
        K, proj, incl = action_groupoid(swap_action)
        assert groupoids_isomorphic(K, pair2)
        assert proj.object_map == (0, 0)
        assert incl.object_map == (0, 1)

    def test_rejects_crossed_module_actions(self):
        with pytest.raises(NotAStrictAction):
            action_groupoid(catalog.xm0_on_c2())


class TestBundles:
    def test_swap_bundle(self, swap_bundle):
        assert swap_bundle.K.sizes[:2] == (2, 4)
        assert swap_bundle.G.sizes == (1, 2, 4, 8)
        assert swap_bundle.n == 1
        assert swap_bundle.certificate.holds

    def test_fiber_of_swap(self, swap_bundle):
        F, objects, arrows = fiber_groupoid(swap_bundle)
        assert len(objects) == 2
        assert len(arrows) == 2
        assert F.is_discrete()
        assert fiber(swap_bundle).sizes[0] == 2

    def test_fiber_vertex_must_exist(self, swap_bundle):
        with pytest.raises(InvalidIndex):
            fiber_with_projection(swap_bundle, 3)

    def test_2group_action_complex(self):
        bundle = strict_2group_action_groupoid(catalog.xm0_on_c2(), 4)
        assert bundle.K.sizes == (1, 2, 8, 64, 1024)
        assert bundle.n == 2

    def test_2group_construction_needs_a_crossed_module(self, swap_action):
        with pytest.raises(NotAStrictAction):
            strict_2group_action_groupoid(swap_action)

    def test_trivial_bundle(self, nerve_c2, pair2):
        bundle = trivial_bundle(nerve_c2, pair2, n=2)
        assert bundle.K.sizes == (2, 8, 32, 128)
        assert fiber(bundle).sizes == nerve(pair2, 3).sizes

    def test_non_fibration_rejected(self, nerve_pair2):
        with pytest.raises(NotAFibration):
            make_bundle("bad", constant_map(nerve_pair2, point(3), 0), 1)

    def test_projection_at_level_2(self, nerve_pair2):
        bundle = make_bundle("ok", constant_map(nerve_pair2, point(3), 0), 2)
        assert bundle.certificate.holds

    def test_isomorphic_bundles(self, swap_bundle, swap_action):
        again = strict_action_groupoid(swap_action, 3)
        assert bundle_isomorphism(swap_bundle, again) is not None

    def test_non_isomorphic_bundles(self, swap_bundle, nerve_c2):
        other = trivial_bundle(nerve_c2, trivial_groupoid(), n=1)
        assert bundle_isomorphism(swap_bundle, other) is None


class TestFixtureFibers:
    @pytest.mark.parametrize("build", GROUP_ACTIONS.values(), ids=list(GROUP_ACTIONS))
    def test_group_action_bundle(self, build):
        A = build()
        bundle = strict_action_groupoid(A, 3)
        assert bundle.certificate.holds
        assert isomorphic(fiber(bundle), nerve(A.groupoid, 3))

    @pytest.mark.parametrize("build, N", CROSSED_MODULE_ACTIONS.values(), ids=list(CROSSED_MODULE_ACTIONS))
    def test_crossed_module_action_bundle(self, build, N):
        A = build()
        bundle = strict_2group_action_groupoid(A, N)
        assert bundle.certificate.holds
        assert isomorphic(fiber(bundle), nerve(A.groupoid, N))
