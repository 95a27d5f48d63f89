"""Tests for Kan conditions, n-groupoid classification and relative checks."""

import pytest
from pydantic import ValidationError

from app.errors import DepthExceedsTruncation, InvalidIndex, NoFiller
from app.groupoids.groupoid_bridge import nerve
from app.simplicial.core import constant_map, identity_map, point, standard_complex
from app.simplicial.kan_verify import (
    CheckReport,
    check_equivalence,
    check_fibration,
    check_hypercover,
    check_kan,
    classify_n_groupoid,
    combine_verdicts,
    equivalence_map,
    fill_horn,
    fill_relative_horn,
)


class TestReports:
    def test_failing_report_needs_witness(self):
        with pytest.raises(ValidationError):
            CheckReport(subject="X", condition="c", verdict="fails")

    def test_combine_verdicts(self):
        assert combine_verdicts(["holds", "partial"]) == "partial"
        assert combine_verdicts(["partial", "fails", "holds"]) == "fails"
        assert combine_verdicts([]) == "holds"


class TestKan:
    def test_interval_fails_outer_horn(self):
        X = standard_complex("simplex", 1, N=2)
        report = check_kan(X, 2, 0)
        assert report.verdict == "fails"
        assert report.witnesses

    def test_interval_fills_inner_horn(self):
        assert check_kan(standard_complex("simplex", 1, N=2), 2, 1).holds

    def test_nerve_fills_uniquely(self, nerve_c2):
        assert check_kan(nerve_c2, 2, mode="unique").holds
        assert len(check_kan(nerve_c2, 2).details) == 3

    def test_above_truncation_is_partial(self, nerve_c2):
        assert check_kan(nerve_c2, 4, 0).verdict == "partial"

    def test_etale_is_vacuous(self, nerve_c2):
        report = check_kan(nerve_c2, 2, 1, mode="etale")
        assert report.holds
        assert report.notes

    def test_dimension_zero_rejected(self, nerve_c2):
        with pytest.raises(InvalidIndex):
            check_kan(nerve_c2, 0)


class TestClassification:
    def test_nerve_is_a_1_groupoid(self, nerve_c2):
        assert classify_n_groupoid(nerve_c2, 1).holds

    def test_short_truncation_is_partial(self, c2):
        assert classify_n_groupoid(nerve(c2, 2), 1).verdict == "partial"

    def test_interval_is_not_a_groupoid(self):
        assert classify_n_groupoid(standard_complex("simplex", 1, N=3), 1).verdict == "fails"


class TestFillers:
    def test_composition_filler(self, nerve_c2):
        """The generator composed with itself is the unit."""
        filler = fill_horn(nerve_c2, 2, 1, (1, 1))
        assert filler.unique
        assert nerve_c2.faces[2][1][filler.cell] == 0

    def test_missing_filler(self):
        X = standard_complex("simplex", 1, N=2)
        # d1 = (0, 0), d2 = (0, 1): the third vertex would have to be both 0 and 1
        with pytest.raises(NoFiller):
            fill_horn(X, 2, 0, (0, 1))

    def test_relative_filler(self, nerve_c2):
        f = identity_map(nerve_c2)
        filler = fill_relative_horn(f, 2, 1, (1, 1), base=fill_horn(nerve_c2, 2, 1, (1, 1)).cell)
        assert filler.unique


class TestRelativeChecks:
    def test_identity_is_a_fibration(self, nerve_c2):
        assert check_fibration(identity_map(nerve_c2), 1).holds

    def test_projection_to_a_point(self, nerve_pair2):
        f = constant_map(nerve_pair2, point(3), 0)
        assert check_fibration(f, 1).verdict == "fails"
        assert check_fibration(f, 2).holds

    def test_shallow_map_is_partial(self, c2):
        X = nerve(c2, 2)
        assert check_fibration(identity_map(X), 3).verdict == "partial"

    def test_identity_is_a_hypercover(self, nerve_c2):
        assert check_hypercover(identity_map(nerve_c2), 0).holds

    def test_projection_is_not_a_hypercover(self, nerve_pair2):
        assert check_hypercover(constant_map(nerve_pair2, point(3), 0), 0).verdict == "fails"

    def test_identity_is_an_equivalence(self, nerve_c2):
        report = check_equivalence(identity_map(nerve_c2), 1)
        assert report.holds
        assert report.depth == 2

    def test_equivalence_depth_bounded_by_truncation(self, nerve_c2):
        with pytest.raises(DepthExceedsTruncation):
            equivalence_map(identity_map(nerve_c2), depth=3)
