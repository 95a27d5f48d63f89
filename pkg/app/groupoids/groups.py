"""
Finite groups given by multiplication tables.

Elements are integers ``0..order-1`` with display labels; the identity is
found from the table rather than assumed to be element 0.
"""

from functools import cached_property
from itertools import product as cartesian
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, model_validator

from app.errors import InvalidGroup


class FiniteGroup(BaseModel):
    """A group with ``table[a][b] = a·b``."""

    model_config = ConfigDict(frozen=True)

    name: str = "G"
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def _validate_group(self) -> "FiniteGroup":
        n = len(self.elements)
        if n == 0:
            raise InvalidGroup(f"group {self.name} has no elements")
        if len(set(self.elements)) != n:
            raise InvalidGroup(f"group {self.name} repeats an element label")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise InvalidGroup(f"multiplication table of {self.name} is not {n}×{n}")
        for a, b in cartesian(range(n), repeat=2):
            if not 0 <= self.table[a][b] < n:
                raise InvalidGroup(
                    f"{self.elements[a]}·{self.elements[b]} leaves {self.name}",
                    witness={"left": self.elements[a], "right": self.elements[b]},
                )
        units = [e for e in range(n) if all(self.table[e][a] == a == self.table[a][e] for a in range(n))]
        if not units:
            raise InvalidGroup(f"group {self.name} has no identity")
        e = units[0]
        inverses = []
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == e and self.table[b][a] == e]
            if not inv:
                raise InvalidGroup(
                    f"{self.elements[a]} has no inverse in {self.name}",
                    witness={"element": self.elements[a]},
                )
            inverses.append(inv[0])
        for a, b, c in cartesian(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise InvalidGroup(
                    f"multiplication of {self.name} is not associative",
                    witness={"triple": [self.elements[a], self.elements[b], self.elements[c]]},
                )
        return self

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def identity(self) -> int:
        n = self.order
        return next(e for e in range(n) if all(self.table[e][a] == a for a in range(n)))

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(self.table[a].index(e) for a in range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def product(self, items: Sequence[int]) -> int:
        out = self.identity
        for a in items:
            out = self.table[out][a]
        return out

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise InvalidGroup(f"{label!r} is not an element of {self.name}")

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a, b in cartesian(range(self.order), repeat=2))

    def center(self) -> list[int]:
        return [z for z in range(self.order) if all(self.table[z][a] == self.table[a][z] for a in range(self.order))]

    def is_trivial(self) -> bool:
        return self.order == 1


def is_homomorphism(f: Sequence[int], A: FiniteGroup, B: FiniteGroup) -> bool:
    if len(f) != A.order:
        return False
    return all(
        f[A.mul(a, b)] == B.mul(f[a], f[b]) for a, b in cartesian(range(A.order), repeat=2)
    )


def is_automorphism(f: Sequence[int], A: FiniteGroup) -> bool:
    return len(set(f)) == A.order and is_homomorphism(f, A, A)


def homomorphisms(A: FiniteGroup, B: FiniteGroup) -> list[tuple[int, ...]]:
    """All homomorphisms by brute force (small groups only)."""
    return [f for f in cartesian(range(B.order), repeat=A.order) if is_homomorphism(f, A, B)]


def automorphisms(A: FiniteGroup) -> list[tuple[int, ...]]:
    return [f for f in homomorphisms(A, A) if len(set(f)) == A.order]


def cyclic_group(n: int, name: Optional[str] = None) -> FiniteGroup:
    """``Z/n`` with labels ``0..n-1`` under addition."""
    if n < 1:
        raise InvalidGroup(f"cyclic group needs n >= 1, got {n}")
    return FiniteGroup(
        name=name or f"C{n}",
        elements=tuple(str(k) for k in range(n)),
        table=tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
    )


def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup(name=name, elements=("e",), table=((0,),))


def symmetric_group_3() -> FiniteGroup:
    """S3 as permutations of (0, 1, 2) composed left to right."""
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    index = {p: k for k, p in enumerate(perms)}
    labels = ("id", "t01", "t02", "t12", "r", "r2")
    table = tuple(
        tuple(index[tuple(q[p[i]] for i in range(3))] for q in perms) for p in perms
    )
    return FiniteGroup(name="S3", elements=labels, table=table)


def direct_product(A: FiniteGroup, B: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """Element ``(a, b)`` has index ``a * |B| + b``."""
    elements = tuple(f"{a}.{b}" for a in A.elements for b in B.elements)
    n = B.order
    table = tuple(
        tuple(
            A.mul(x // n, y // n) * n + B.mul(x % n, y % n)
            for y in range(A.order * B.order)
        )
        for x in range(A.order * B.order)
    )
    return FiniteGroup(name=name or f"{A.name}×{B.name}", elements=elements, table=table)


def normal_subgroups(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Normal subgroups as sorted element tuples (brute force over subsets)."""
    out = []
    n = G.order
    for mask in range(1, 1 << n):
        members = [a for a in range(n) if mask >> a & 1]
        if G.identity not in members:
            continue
        closed = all(G.mul(a, b) in members for a in members for b in members)
        normal = all(G.product([g, a, G.inv(g)]) in members for g in range(n) for a in members)
        if closed and normal:
            out.append(tuple(members))
    return out


def subgroup(G: FiniteGroup, members: Sequence[int], name: Optional[str] = None) -> tuple[FiniteGroup, list[int]]:
    """The subgroup on ``members`` and its inclusion into G."""
    members = sorted(members)
    position = {a: k for k, a in enumerate(members)}
    table = tuple(tuple(position[G.mul(a, b)] for b in members) for a in members)
    H = FiniteGroup(name=name or f"H<{G.name}", elements=tuple(G.elements[a] for a in members), table=table)
    return H, members
