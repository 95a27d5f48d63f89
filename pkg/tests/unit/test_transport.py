"""Tests for pulling back and pushing forward fibrations."""

import pytest

from app.actions.bundles import trivial_bundle
from app.actions.transport import pullback, pushforward
from app.errors import InvalidIndex, NotAHypercover
from app.groupoids.groupoid_bridge import nerve, trivial_groupoid
from app.groupoids.reduction import reduce_to_1
from app.groupoids.two_group import classifying_2group
from app.simplicial.core import constant_map, identity_map, point, truncate
from app.simplicial.hom_search import isomorphic


class TestPullback:
    def test_along_identity(self, swap_bundle):
        pulled = pullback(swap_bundle, identity_map(swap_bundle.G))
        assert pulled.K.sizes == swap_bundle.K.sizes
        assert pulled.incl is not None
        assert isomorphic(pulled.K, swap_bundle.K)

    def test_fiber_inclusion_follows_the_base_vertex(self, nerve_pair2, c2):
        bundle = trivial_bundle(nerve_pair2, c2, n=2, base_vertex=1)
        pulled = pullback(bundle, constant_map(point(3), nerve_pair2, 1))
        assert pulled.base_vertex == 0
        assert pulled.incl is not None
        assert isomorphic(pulled.K, nerve(c2, 3))

    def test_fiber_inclusion_dropped_off_the_base_vertex(self, nerve_pair2, c2):
        bundle = trivial_bundle(nerve_pair2, c2, n=2, base_vertex=1)
        pulled = pullback(bundle, constant_map(point(3), nerve_pair2, 0))
        assert pulled.incl is None

    def test_base_vertex_must_exist(self, nerve_pair2, c2):
        with pytest.raises(InvalidIndex):
            trivial_bundle(nerve_pair2, c2, n=2, base_vertex=2)


class TestPushforward:
    def test_along_identity(self, swap_bundle):
        pushed = pushforward(swap_bundle, identity_map(swap_bundle.G))
        assert pushed.K.sizes == truncate(swap_bundle.K, 2).sizes
        assert pushed.incl is not None

    def test_keeps_the_base_vertex(self, nerve_pair2, c2):
        bundle = trivial_bundle(nerve_pair2, c2, n=2, base_vertex=1)
        pushed = pushforward(bundle, identity_map(nerve_pair2))
        assert pushed.base_vertex == 1
        assert pushed.incl is not None

    def test_base_must_be_a_hypercover(self, nerve_pair2):
        bundle = trivial_bundle(nerve_pair2, trivial_groupoid(), n=2)
        with pytest.raises(NotAHypercover):
            pushforward(bundle, constant_map(nerve_pair2, point(3), 0), hypercover_n=0)

    def test_push_then_pull_along_reduction(self, xm2, c2):
        E = trivial_bundle(classifying_2group(xm2, 3), c2, n=2)
        _, f = reduce_to_1(E.G)
        pushed = pushforward(E, f)
        back = pullback(pushed, f)
        assert isomorphic(back.K, truncate(E.K, 2))
