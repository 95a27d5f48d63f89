"""Tests for hom-set enumeration, horn tables, prisms and cylinders."""

import pytest

from app.errors import DepthExceedsTruncation, TruncationMismatch
from app.groupoids.groupoid_bridge import nerve
from app.simplicial.core import identity_map, standard_complex, truncate
from app.simplicial.hom_search import (
    HomSearch,
    build_cylinder,
    compatible_face_tuples,
    coskeletal_extension,
    count_maps,
    cylinder,
    enumerate_maps,
    find_isomorphism,
    find_natural_transformations,
    horn_restriction,
    isomorphic,
    prism_maps,
    standard_prism,
)


class TestHomSets:
    def test_simplices_of_a_nerve(self, nerve_c2):
        """Maps Δ[n] → N(C2) are strings of n arrows."""
        assert count_maps(standard_complex("simplex", 1), nerve_c2) == 2
        assert count_maps(standard_complex("simplex", 2), nerve_c2) == 4

    def test_boundary_and_horn_counts(self, nerve_c2, nerve_pair2):
        assert count_maps(standard_complex("boundary", 2), nerve_c2) == 8
        assert count_maps(standard_complex("horn", 2, 1), nerve_pair2) == 8

    def test_enumerate_maps_from_a_point(self, nerve_pair2):
        maps = enumerate_maps(standard_complex("simplex", 0), nerve_pair2)
        assert sorted(f.levels[0][0] for f in maps) == [0, 1]

    def test_limit(self, nerve_pair2):
        assert len(enumerate_maps(standard_complex("simplex", 2), nerve_pair2, limit=1)) == 1

    def test_target_below_domain(self, c2):
        with pytest.raises(TruncationMismatch):
            enumerate_maps(standard_complex("simplex", 3), nerve(c2, 2))

    def test_search_is_deterministic(self, nerve_pair2):
        A = standard_complex("horn", 2, 0)
        assert HomSearch(A, nerve_pair2).run() == HomSearch(A, nerve_pair2).run()


class TestHornTables:
    def test_inner_horns_of_a_nerve_fill_uniquely(self, nerve_c2):
        table = horn_restriction(nerve_c2, 2, 1)
        assert len(table.horns) == 4
        assert all(len(cells) == 1 for cells in table.fillers())

    def test_boundary_tuples(self, nerve_c2):
        assert len(compatible_face_tuples(nerve_c2, 2)) == 8

    def test_nerve_is_2_coskeletal(self, nerve_c2):
        assert coskeletal_extension(truncate(nerve_c2, 2)).sizes == nerve_c2.sizes


class TestPrismsAndCylinders:
    def test_prism_is_cached(self):
        P = standard_prism(1, 1)
        assert P is standard_prism(1, 1)
        assert P.complex.sizes == (4, 9, 16)

    def test_prism_maps_over_a_vertex(self, nerve_c2):
        _, maps = prism_maps(nerve_c2, 0, 1)
        assert len(maps) == 2

    def test_cylinder_sizes(self, nerve_c2):
        X = cylinder(nerve_c2, 1, 2)
        assert X.sizes[0] == 2
        assert X.sizes[1] == 8

    def test_cylinder_endpoints(self, nerve_c2):
        cyl = build_cylinder(nerve_c2, 1, 1)
        assert cyl.evaluation(0).target.sizes == nerve_c2.sizes
        const = cyl.constant()
        for x in nerve_c2.cells(0):
            c = const.levels[0][x]
            assert cyl.endpoint(0, c, 0) == x
            assert cyl.endpoint(0, c, 1) == x

    def test_cylinder_needs_levels(self, nerve_c2):
        with pytest.raises(DepthExceedsTruncation):
            build_cylinder(nerve_c2, 1, 3)

    def test_natural_transformations_of_the_identity(self, nerve_c2):
        """Self-transformations of id on C2 are the central elements."""
        f = identity_map(nerve_c2)
        assert len(find_natural_transformations(f, f, depth=2)) == 2


class TestIsomorphisms:
    def test_renamed_copy_is_isomorphic(self, nerve_c2):
        other = nerve_c2.model_copy(update={"name": "copy"})
        iso = find_isomorphism(nerve_c2, other)
        assert iso is not None
        assert all(len(set(level)) == len(level) for level in iso.levels)

    def test_different_sizes(self, nerve_c2, nerve_pair2):
        assert not isomorphic(nerve_c2, nerve_pair2)
