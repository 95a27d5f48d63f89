from typing import Iterable


class UnionFind:
    """Disjoint sets over ``0..size-1``; the root of a class is its least member."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True

    def union_all(self, members: Iterable[int]) -> None:
        members = list(members)
        for other in members[1:]:
            self.union(members[0], other)

    def representatives(self) -> list[int]:
        return [x for x in range(len(self.parent)) if self.find(x) == x]

    def classes(self) -> tuple[list[int], list[int]]:
        """``(reps, class_of)`` with classes numbered by ascending representative."""
        reps = self.representatives()
        position = {r: k for k, r in enumerate(reps)}
        return reps, [position[self.find(x)] for x in range(len(self.parent))]

    def __len__(self) -> int:
        return len(self.representatives())
