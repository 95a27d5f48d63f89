from app.utilities.union_find import UnionFind


def test_least_member_is_root():
    uf = UnionFind(5)
    assert uf.union(3, 1)
    assert not uf.union(1, 3)
    assert uf.find(3) == 1


def test_classes_numbered_by_representative():
    uf = UnionFind(5)
    uf.union_all([4, 2])
    uf.union(3, 0)
    reps, class_of = uf.classes()
    assert reps == [0, 1, 2]
    assert class_of == [0, 1, 2, 0, 2]
    assert len(uf) == 3
