"""Tests for crossed modules, classifying 2-groups and unit transformations."""

import pytest

from app.errors import DepthExceedsTruncation, InvalidCrossedModule, NotATransformation
from app.groupoids.groups import cyclic_group
from app.groupoids.two_group import (
    CrossedModule,
    as_transformation,
    classifying_2group,
    crossed_module_to_grouplike,
    degenerate_transformation,
    enumerate_cylinders,
    reunitize,
    trivial_action,
    two_cell_arrow,
    unit_elements,
)
from app.simplicial.core import structurally_equal
from app.simplicial.kan_verify import classify_n_groupoid


class TestCrossedModules:
    def test_fixtures_are_valid(self, xm0, xm1, xm2):
        assert xm0.kernel() == [0, 1]
        assert xm1.image() == [0]
        assert xm2.image() == [0, 2]

    def test_boundary_must_be_a_homomorphism(self):
        H, G = cyclic_group(2), cyclic_group(4)
        with pytest.raises(InvalidCrossedModule):
            CrossedModule(name="bad", H=H, G=G, bnd=(0, 1), act=trivial_action(G, H))

    def test_grouplike_groupoid(self, xm0):
        L = crossed_module_to_grouplike(xm0)
        assert L.groupoid.objects == ("e",)
        assert len(L.groupoid.arrows) == 2
        assert L.star(1, 1) == 0


class TestClassifyingTwoGroup:
    def test_sizes(self, bg_xm0, bg_xm2):
        assert bg_xm0.sizes[:4] == (1, 1, 2, 8)
        assert bg_xm2.sizes[1] == 4
        assert bg_xm2.sizes[2] == 32

    def test_is_a_2_groupoid(self, bg_xm0):
        assert classify_n_groupoid(bg_xm0, 2).holds

    def test_level_3_build_agrees(self, xm0, bg_xm0):
        low = classifying_2group(xm0, 3)
        assert low.sizes == bg_xm0.sizes[:4]

    def test_other_truncations_rejected(self, xm0):
        with pytest.raises(DepthExceedsTruncation):
            classifying_2group(xm0, 5)

    def test_two_cell_arrow(self, xm0, bg_xm0):
        L = crossed_module_to_grouplike(xm0)
        assert sorted(two_cell_arrow(L, c) for c in bg_xm0.cells(2)) == [0, 1]


class TestTransformations:
    def test_cylinder_counts(self, bg_xm0, bg_xm2):
        assert len(enumerate_cylinders(bg_xm0, 0, 1)) == 4
        assert len(enumerate_cylinders(bg_xm2, 0, 1)) == 16
        assert len(enumerate_cylinders(bg_xm2, 0, 1, bottom=0)) == 4

    def test_unit_elements(self, bg_xm0, bg_xm2):
        assert list(unit_elements(bg_xm0)) == [0]
        assert list(unit_elements(bg_xm2)) == [0, 2]

    def test_degenerate_transformation(self, bg_xm2):
        omega = degenerate_transformation(bg_xm2)
        assert omega.bottom == 0
        assert omega.top == 0

    def test_foreign_tables_rejected(self, bg_xm2):
        omega = degenerate_transformation(bg_xm2)
        broken = [list(level) for level in omega.tables]
        broken[0][0] = 0 if broken[0][0] else 1
        with pytest.raises(NotATransformation):
            as_transformation(bg_xm2, broken)

    def test_reunitize_around_the_degenerate_unit(self, bg_xm2):
        same = reunitize(bg_xm2, degenerate_transformation(bg_xm2))
        assert structurally_equal(same, bg_xm2)

    def test_reunitize_around_another_unit(self, bg_xm2):
        omega = unit_elements(bg_xm2)[2][0]
        moved = reunitize(bg_xm2, omega)
        assert moved.degens[0][0] == (2,)
        assert moved.faces == bg_xm2.faces
