"""Tests for truncated simplicial sets, operators and maps."""

import pytest

from app.errors import IdentityViolation, MapViolation, MissingTableEntry, TargetMismatch
from app.simplicial.core import (
    SimplicialMap,
    agree_up_to,
    apply_operator,
    build_truncated,
    compose,
    constant_map,
    empty,
    fiber_product,
    identity_map,
    is_degenerate,
    iterated_degeneracy,
    point,
    product,
    skeleton,
    standard_complex,
    structurally_equal,
    truncate,
    vertices,
)


def _cell(X, n, label):
    return X.labels[n].index(label)


class TestBuildTruncated:
    def test_point_from_identifiers(self):
        X = build_truncated(
            1,
            [["v"], ["vv"]],
            {(1, 0): {"vv": "v"}, (1, 1): {"vv": "v"}},
            {(0, 0): {"v": "vv"}},
            name="pt",
        )
        assert X.sizes == (1, 1)
        assert X.label(1, 0) == "vv"

    def test_identity_violation_is_reported(self):
        """s_0 swapping vertices breaks d_0 s_0 = id."""
        with pytest.raises(IdentityViolation) as exc:
            build_truncated(
                1,
                [["a", "b"], ["sa", "sb"]],
                {(1, 0): {"sa": "a", "sb": "b"}, (1, 1): {"sa": "a", "sb": "b"}},
                {(0, 0): {"a": "sb", "b": "sa"}},
            )
        assert exc.value.level == 0

    def test_missing_entry(self):
        with pytest.raises(MissingTableEntry):
            build_truncated(
                1,
                [["v"], ["vv"]],
                {(1, 0): {"vv": "v"}, (1, 1): {}},
                {(0, 0): {"v": "vv"}},
            )

    def test_missing_table(self):
        with pytest.raises(MissingTableEntry):
            build_truncated(1, [["v"], ["vv"]], {(1, 0): {"vv": "v"}}, {(0, 0): {"v": "vv"}})


class TestStandardComplexes:
    def test_simplex_sizes(self):
        assert standard_complex("simplex", 1).sizes == (2, 3)
        assert standard_complex("simplex", 2).sizes == (3, 6, 10)

    def test_boundary_and_horn_sizes(self):
        assert standard_complex("boundary", 2).sizes == (3, 6, 9)
        assert standard_complex("horn", 2, 1).sizes == (3, 5, 7)

    def test_point_and_empty(self):
        assert point(3).sizes == (1, 1, 1, 1)
        assert empty(2).sizes == (0, 0, 0)


class TestOperators:
    def test_apply_operator_picks_edges_and_degeneracies(self):
        X = standard_complex("simplex", 2)
        top = _cell(X, 2, (0, 1, 2))
        assert X.label(1, apply_operator(X, 2, top, (0, 2))) == (0, 2)
        edge = _cell(X, 1, (0, 1))
        assert X.label(2, apply_operator(X, 1, edge, (0, 0, 1))) == (0, 0, 1)

    def test_vertices(self):
        X = standard_complex("simplex", 2)
        top = _cell(X, 2, (0, 1, 2))
        assert [X.label(0, v) for v in vertices(X, 2, top)] == [(0,), (1,), (2,)]

    def test_iterated_degeneracy(self):
        X = standard_complex("simplex", 2)
        assert X.label(2, iterated_degeneracy(X, 1, 2)) == (1, 1, 1)

    def test_is_degenerate(self):
        X = standard_complex("simplex", 2)
        degenerate, witness = is_degenerate(X, 2, _cell(X, 2, (0, 0, 1)))
        assert degenerate
        assert witness is not None
        assert is_degenerate(X, 2, _cell(X, 2, (0, 1, 2))) == (False, None)


class TestConstructions:
    def test_truncate_and_skeleton(self):
        X = standard_complex("simplex", 2)
        assert truncate(X, 1).sizes == (3, 6)
        # only the 9 degenerate 2-cells survive
        assert skeleton(X, 1).sizes == (3, 6, 9)

    def test_product_ids(self):
        A = standard_complex("simplex", 1)
        P = product(A, A)
        assert P.sizes == (4, 9)
        assert P.label(1, 1 * 3 + 2) == (A.label(1, 1), A.label(1, 2))

    def test_structural_equality_ignores_names(self):
        A = standard_complex("simplex", 2)
        B = A.model_copy(update={"name": "other"})
        assert structurally_equal(A, B)
        assert not structurally_equal(A, standard_complex("boundary", 2))

    def test_agree_up_to(self):
        assert agree_up_to(standard_complex("simplex", 2, N=3), standard_complex("simplex", 2), 2)
        assert not agree_up_to(standard_complex("simplex", 2), standard_complex("simplex", 1), 1)


class TestMaps:
    def test_map_must_commute_with_faces(self):
        X = standard_complex("simplex", 1)
        with pytest.raises(MapViolation):
            SimplicialMap(name="swap", source=X, target=X, levels=((1, 0), (0, 1, 2)))

    def test_compose_identities(self):
        X = standard_complex("simplex", 2)
        f = compose(identity_map(X), identity_map(X))
        assert f.levels == identity_map(X).levels

    def test_compose_mismatch(self):
        with pytest.raises(TargetMismatch):
            compose(identity_map(standard_complex("simplex", 1)), identity_map(standard_complex("simplex", 2)))

    def test_constant_map(self):
        X = standard_complex("simplex", 2)
        f = constant_map(X, point(2), 0)
        assert all(set(level) == {0} for level in f.levels)

    def test_fiber_product_over_point_is_product(self):
        A = standard_complex("simplex", 1)
        f = constant_map(A, point(1), 0)
        P, pr1, pr2 = fiber_product(f, f)
        assert P.sizes == (4, 9)
        assert pr1.target.sizes == A.sizes
        assert pr2.levels[0] == (0, 1, 0, 1)

    def test_fiber_product_needs_common_target(self):
        A = standard_complex("simplex", 1)
        with pytest.raises(TargetMismatch):
            fiber_product(identity_map(A), constant_map(A, point(1), 0))
