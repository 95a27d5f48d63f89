"""Tests for groupoids, nerves, functors and the groupoid of a 1-groupoid."""

import pytest

from app.errors import InvalidFunctor, InvalidGroupoid, NotA1Groupoid
from app.groupoids.groupoid_bridge import (
    FiniteGroupoid,
    Functor,
    compose_functors,
    cyclic_groupoid,
    discrete_groupoid,
    disjoint_union,
    find_groupoid_isomorphism,
    functor_to_map,
    groupoid_from_composition,
    groupoids_isomorphic,
    identity_functor,
    map_to_functor,
    nerve,
    nerve_strings,
    to_groupoid,
    transitive_groupoid,
    trivial_groupoid,
)
from app.groupoids.groups import cyclic_group
from app.simplicial.core import standard_complex
from app.simplicial.kan_verify import classify_n_groupoid


class TestGroupoids:
    def test_composition_must_be_total(self):
        with pytest.raises(InvalidGroupoid):
            FiniteGroupoid(
                name="bad",
                objects=("•",),
                arrows=("e", "g"),
                src=(0, 0),
                tgt=(0, 0),
                comp={(0, 0): 0, (0, 1): 1, (1, 0): 1},
                inv=(0, 1),
                unit=(0,),
            )

    def test_units_and_inverses_are_derived(self):
        G = groupoid_from_composition(
            "C2", ["•"], ["e", "g"], [0, 0], [0, 0], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
        )
        assert G.unit == (0,)
        assert G.inv == (0, 1)

    def test_missing_unit(self):
        with pytest.raises(InvalidGroupoid):
            groupoid_from_composition("bad", ["p", "q"], ["a"], [0], [1], {})

    def test_transitive_groupoid(self, pair2):
        assert len(pair2.arrows) == 4
        X = transitive_groupoid(["p", "q"], cyclic_group(2))
        assert len(X.arrows) == 8
        assert len(X.isotropy(0)) == 2

    def test_discrete_and_disjoint_union(self):
        X = disjoint_union(discrete_groupoid(["p"]), trivial_groupoid())
        assert X.objects == ("p", "•")
        assert X.is_discrete()
        Y = disjoint_union(discrete_groupoid(["p"]), discrete_groupoid(["p"]))
        assert Y.objects == ("p", "p'")


class TestNerve:
    def test_sizes(self, c2, pair2):
        assert nerve(c2, 3).sizes == (1, 2, 4, 8)
        assert nerve(pair2, 3).sizes == (2, 4, 8, 16)

    def test_strings(self, c2):
        assert nerve_strings(c2, 2)[2] == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_faces_compose(self, c2):
        X = nerve(c2, 2)
        cell = nerve_strings(c2, 2)[2].index((1, 1))
        assert X.faces[2][1][cell] == 0
        assert X.faces[2][0][cell] == 1

    def test_nerve_is_a_1_groupoid(self, pair2):
        assert classify_n_groupoid(nerve(pair2, 3), 1).holds


class TestToGroupoid:
    def test_round_trip(self, pair2, c2):
        assert groupoids_isomorphic(to_groupoid(nerve(pair2, 3)), pair2)
        assert groupoids_isomorphic(to_groupoid(nerve(c2, 3)), c2)

    def test_rejects_non_groupoid(self):
        with pytest.raises(NotA1Groupoid):
            to_groupoid(standard_complex("simplex", 1, N=3))

    def test_rejects_short_truncation(self, c2):
        with pytest.raises(NotA1Groupoid):
            to_groupoid(nerve(c2, 1))


class TestFunctors:
    def test_functor_to_trivial(self, c2):
        F = Functor(name="!", source=c2, target=trivial_groupoid(), object_map=(0,), arrow_map=(0, 0))
        f = functor_to_map(F, 3)
        assert f.target.sizes == (1, 1, 1, 1)
        assert map_to_functor(f).arrow_map == (0, 0)

    def test_unit_must_be_preserved(self, c2):
        with pytest.raises(InvalidFunctor):
            Functor(name="bad", source=c2, target=c2, object_map=(0,), arrow_map=(1, 1))

    def test_composition(self, c2):
        F = compose_functors(identity_functor(c2), identity_functor(c2))
        assert F.arrow_map == (0, 1)

    def test_isomorphism_search(self, c2):
        assert find_groupoid_isomorphism(c2, cyclic_groupoid(2)) is not None
        assert find_groupoid_isomorphism(c2, cyclic_groupoid(3)) is None
