"""Tests for 2-isotropy and the reduction of 2-groupoids."""

import pytest

from app.errors import NotA2Groupoid, Not2IsotropyFree
from app.groupoids.groupoid_bridge import cyclic_groupoid, groupoids_isomorphic
from app.groupoids.reduction import (
    check_isotropy_consequences,
    edge_classes,
    is_2_isotropy_free,
    reduce_to_1,
    two_isotropy_set,
)
from app.simplicial.core import standard_complex
from app.simplicial.kan_verify import check_hypercover


class TestIsotropy:
    def test_xm0_has_isotropy(self, bg_xm0):
        assert len(two_isotropy_set(bg_xm0, 0)) == 2
        assert is_2_isotropy_free(bg_xm0).verdict == "fails"

    def test_xm2_is_isotropy_free(self, bg_xm2):
        assert is_2_isotropy_free(bg_xm2).holds

    def test_consequences_hold_for_xm2(self, bg_xm2):
        report = check_isotropy_consequences(bg_xm2)
        assert report.holds
        assert len(report.details) == 3

    def test_consequences_informational_without_hypothesis(self, bg_xm0):
        report = check_isotropy_consequences(bg_xm0)
        assert report.holds
        assert any("informational" in note for note in report.notes)


class TestReduction:
    def test_edge_classes(self, bg_xm2):
        reps, _ = edge_classes(bg_xm2).classes()
        assert len(reps) == 2

    def test_reduce_xm2(self, bg_xm2):
        reduced, f = reduce_to_1(bg_xm2)
        assert groupoids_isomorphic(reduced, cyclic_groupoid(2))
        assert f.target.sizes[:3] == (1, 2, 4)
        assert check_hypercover(f, 2).holds

    def test_reduce_nerve(self, nerve_pair2, pair2):
        reduced, _ = reduce_to_1(nerve_pair2)
        assert groupoids_isomorphic(reduced, pair2)

    def test_isotropy_blocks_reduction(self, bg_xm0):
        with pytest.raises(Not2IsotropyFree):
            reduce_to_1(bg_xm0)

    def test_non_2_groupoid(self):
        with pytest.raises(NotA2Groupoid):
            reduce_to_1(standard_complex("simplex", 1, N=3))
