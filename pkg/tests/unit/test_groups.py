"""Tests for finite groups."""

import pytest

from app.errors import InvalidGroup
from app.groupoids.groups import (
    FiniteGroup,
    automorphisms,
    cyclic_group,
    direct_product,
    homomorphisms,
    normal_subgroups,
    subgroup,
    symmetric_group_3,
    trivial_group,
)


class TestFiniteGroup:
    def test_cyclic_group(self):
        C4 = cyclic_group(4)
        assert C4.order == 4
        assert C4.identity == 0
        assert C4.inv(1) == 3
        assert C4.product([1, 1, 1]) == 3

    def test_table_without_inverse(self):
        with pytest.raises(InvalidGroup):
            FiniteGroup(name="bad", elements=("a", "b"), table=((0, 1), (1, 1)))

    def test_repeated_label(self):
        with pytest.raises(InvalidGroup):
            FiniteGroup(name="bad", elements=("a", "a"), table=((0, 1), (1, 0)))

    def test_index_of_unknown_label(self):
        with pytest.raises(InvalidGroup):
            cyclic_group(2).index("7")

    def test_s3(self):
        S3 = symmetric_group_3()
        assert not S3.is_abelian()
        assert S3.center() == [S3.identity]

    def test_direct_product(self):
        V = direct_product(cyclic_group(2), cyclic_group(2))
        assert V.order == 4
        assert V.is_abelian()
        assert V.elements[3] == "1.1"

    def test_trivial(self):
        assert trivial_group().is_trivial()


class TestSubgroups:
    def test_normal_subgroups_of_c4(self):
        assert normal_subgroups(cyclic_group(4)) == [(0,), (0, 2), (0, 1, 2, 3)]

    def test_normal_subgroups_of_s3(self):
        S3 = symmetric_group_3()
        found = normal_subgroups(S3)
        assert len(found) == 3
        assert tuple(sorted(S3.index(x) for x in ("id", "r", "r2"))) in found

    def test_subgroup(self):
        H, inclusion = subgroup(cyclic_group(4), [2, 0])
        assert H.elements == ("0", "2")
        assert inclusion == [0, 2]

    def test_homomorphisms(self):
        assert homomorphisms(cyclic_group(2), cyclic_group(4)) == [(0, 0), (0, 2)]
        assert len(automorphisms(cyclic_group(4))) == 2
