"""Tests for strictification over the nerve of a group."""

import pytest

from app.actions.bundles import trivial_bundle
from app.actions.orbits import free_quotient
from app.actions.strictify import base_group, strictify
from app.errors import BaseNotA1Group
from app.groupoids.groupoid_bridge import nerve, trivial_groupoid
from app.simplicial.hom_search import isomorphic
from app.simplicial.kan_verify import check_equivalence


def test_base_group(swap_bundle):
    G = base_group(swap_bundle)
    assert G.order == 2
    assert G.is_abelian()


def test_strictify_swap(swap_bundle):
    strict, action, f = strictify(swap_bundle)
    assert len(strict.objects) == 4
    assert action.G.order == 2
    assert check_equivalence(f).holds

    quotient, _ = free_quotient(action)
    assert len(quotient.objects) == 2
    assert isomorphic(nerve(quotient, swap_bundle.K.N), swap_bundle.K)


def test_base_with_several_vertices(nerve_pair2):
    bundle = trivial_bundle(nerve_pair2, trivial_groupoid(), n=1)
    with pytest.raises(BaseNotA1Group):
        strictify(bundle)
