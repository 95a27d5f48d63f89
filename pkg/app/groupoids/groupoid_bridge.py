"""
Finite groupoids and their nerves.

Composition is written in diagrammatic order: ``compose(a, b)`` is defined
when ``tgt(a) == src(b)`` and goes from ``src(a)`` to ``tgt(b)``. A nerve
``n``-cell is a string of ``n`` composable arrows (an object for ``n = 0``).
"""

import logging
from itertools import product as cartesian
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import InvalidFunctor, InvalidGroupoid, InvalidIndex, NotA1Groupoid, ToolkitError
from app.groupoids.groups import FiniteGroup, cyclic_group, trivial_group
from app.simplicial.core import SimplicialMap, TruncatedSimplicialSet, from_tables
from app.simplicial.hom_search import find_isomorphism
from app.simplicial.kan_verify import classify_n_groupoid, fill_horn

logger = logging.getLogger(__name__)


class FiniteGroupoid(BaseModel):
    """Objects, arrows and total composition on composable pairs."""

    model_config = ConfigDict(frozen=True)

    name: str = "G"
    objects: tuple[str, ...]
    arrows: tuple[str, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    comp: dict[tuple[int, int], int] = Field(description="(a, b) -> a then b")
    inv: tuple[int, ...]
    unit: tuple[int, ...]

    @model_validator(mode="after")
    def _validate_groupoid(self) -> "FiniteGroupoid":
        validate_groupoid(self)
        return self

    def compose(self, a: int, b: int) -> int:
        try:
            return self.comp[(a, b)]
        except KeyError:
            raise InvalidGroupoid(
                f"{self.arrows[a]} and {self.arrows[b]} are not composable in {self.name}"
            )

    def hom(self, x: int, y: int) -> list[int]:
        return [a for a in range(len(self.arrows)) if self.src[a] == x and self.tgt[a] == y]

    def isotropy(self, x: int) -> list[int]:
        return self.hom(x, x)

    def is_discrete(self) -> bool:
        return all(a == self.unit[self.src[a]] for a in range(len(self.arrows)))

    def object_index(self, label: str) -> int:
        try:
            return self.objects.index(label)
        except ValueError:
            raise InvalidGroupoid(f"{label!r} is not an object of {self.name}")

    def arrow_index(self, label: str) -> int:
        try:
            return self.arrows.index(label)
        except ValueError:
            raise InvalidGroupoid(f"{label!r} is not an arrow of {self.name}")

    def describe(self) -> str:
        return f"{self.name} ({len(self.objects)} objects, {len(self.arrows)} arrows)"


def validate_groupoid(G: FiniteGroupoid) -> None:
    """Totality, associativity, unit and inverse laws; raises InvalidGroupoid."""
    n_obj, n_arr = len(G.objects), len(G.arrows)
    if len(set(G.objects)) != n_obj or len(set(G.arrows)) != n_arr:
        raise InvalidGroupoid(f"{G.name} repeats an object or arrow label")
    if not (len(G.src) == len(G.tgt) == len(G.inv) == n_arr and len(G.unit) == n_obj):
        raise InvalidGroupoid(f"structure tables of {G.name} have the wrong length")
    if any(not 0 <= x < n_obj for x in G.src + G.tgt) or any(not 0 <= a < n_arr for a in G.inv + G.unit):
        raise InvalidGroupoid(f"structure tables of {G.name} reference unknown cells")
    for a, b in cartesian(range(n_arr), repeat=2):
        composable = G.tgt[a] == G.src[b]
        if composable != ((a, b) in G.comp):
            raise InvalidGroupoid(
                f"composition of {G.name} is not total on composable pairs",
                witness={"pair": [G.arrows[a], G.arrows[b]]},
            )
        if composable:
            c = G.comp[(a, b)]
            if not 0 <= c < n_arr or G.src[c] != G.src[a] or G.tgt[c] != G.tgt[b]:
                raise InvalidGroupoid(
                    f"{G.arrows[a]}·{G.arrows[b]} has the wrong endpoints",
                    witness={"pair": [G.arrows[a], G.arrows[b]]},
                )
    for x in range(n_obj):
        u = G.unit[x]
        if G.src[u] != x or G.tgt[u] != x:
            raise InvalidGroupoid(f"unit of {G.objects[x]} is not a loop", witness={"object": G.objects[x]})
    for a in range(n_arr):
        if G.comp[(G.unit[G.src[a]], a)] != a or G.comp[(a, G.unit[G.tgt[a]])] != a:
            raise InvalidGroupoid(f"unit law fails for {G.arrows[a]}", witness={"arrow": G.arrows[a]})
        i = G.inv[a]
        if (
            G.src[i] != G.tgt[a]
            or G.comp[(a, i)] != G.unit[G.src[a]]
            or G.comp[(i, a)] != G.unit[G.tgt[a]]
        ):
            raise InvalidGroupoid(f"inverse law fails for {G.arrows[a]}", witness={"arrow": G.arrows[a]})
    for (a, b), ab in G.comp.items():
        for c in range(n_arr):
            if G.src[c] == G.tgt[b] and G.comp[(ab, c)] != G.comp[(a, G.comp[(b, c)])]:
                raise InvalidGroupoid(
                    f"composition of {G.name} is not associative",
                    witness={"triple": [G.arrows[a], G.arrows[b], G.arrows[c]]},
                )


def groupoid_from_composition(
    name: str,
    objects: Sequence[str],
    arrows: Sequence[str],
    src: Sequence[int],
    tgt: Sequence[int],
    comp: dict[tuple[int, int], int],
) -> FiniteGroupoid:
    """Derive units and inverses from a composition table."""
    n_arr = len(arrows)
    units = []
    for x in range(len(objects)):
        loops = [a for a in range(n_arr) if src[a] == x and tgt[a] == x]
        found = [
            u for u in loops
            if all(comp.get((u, a), a) == a for a in range(n_arr) if src[a] == x)
        ]
        if not found:
            raise InvalidGroupoid(f"object {objects[x]} has no unit arrow", witness={"object": objects[x]})
        units.append(found[0])
    inverses = []
    for a in range(n_arr):
        found = [b for b in range(n_arr) if comp.get((a, b)) == units[src[a]]]
        if not found:
            raise InvalidGroupoid(f"arrow {arrows[a]} has no inverse", witness={"arrow": arrows[a]})
        inverses.append(found[0])
    return FiniteGroupoid(
        name=name,
        objects=tuple(objects),
        arrows=tuple(arrows),
        src=tuple(src),
        tgt=tuple(tgt),
        comp=dict(comp),
        inv=tuple(inverses),
        unit=tuple(units),
    )


# -- constructors ----------------------------------------------------------------


def group_groupoid(G: FiniteGroup, name: Optional[str] = None, obj: str = "•") -> FiniteGroupoid:
    """The one-object groupoid BG."""
    n = G.order
    return FiniteGroupoid(
        name=name or G.name,
        objects=(obj,),
        arrows=G.elements,
        src=(0,) * n,
        tgt=(0,) * n,
        comp={(a, b): G.mul(a, b) for a in range(n) for b in range(n)},
        inv=tuple(G.inv(a) for a in range(n)),
        unit=(G.identity,),
    )


def cyclic_groupoid(n: int) -> FiniteGroupoid:
    return group_groupoid(cyclic_group(n))


def transitive_groupoid(
    objects: Sequence[str], G: FiniteGroup, name: Optional[str] = None
) -> FiniteGroupoid:
    """Objects × objects × G with ``(x, y, g)·(y, z, h) = (x, z, gh)``."""
    k = len(objects)
    cells = [(x, y, g) for x in range(k) for y in range(k) for g in range(G.order)]
    index = {c: i for i, c in enumerate(cells)}
    if G.is_trivial():
        labels = [f"{objects[x]}{objects[y]}" for x, y, _ in cells]
    else:
        labels = [f"{objects[x]}{objects[y]}:{G.elements[g]}" for x, y, g in cells]
    comp = {
        (index[(x, y, g)], index[(y, z, h)]): index[(x, z, G.mul(g, h))]
        for x, y, g in cells
        for z in range(k)
        for h in range(G.order)
    }
    return FiniteGroupoid(
        name=name or (f"Pair{k}" if G.is_trivial() else f"Pair{k}×{G.name}"),
        objects=tuple(objects),
        arrows=tuple(labels),
        src=tuple(x for x, _, _ in cells),
        tgt=tuple(y for _, y, _ in cells),
        comp=comp,
        inv=tuple(index[(y, x, G.inv(g))] for x, y, g in cells),
        unit=tuple(index[(x, x, G.identity)] for x in range(k)),
    )


def pair_groupoid(objects: Sequence[str] = ("p", "q"), name: Optional[str] = None) -> FiniteGroupoid:
    """Exactly one arrow between any two objects."""
    return transitive_groupoid(objects, trivial_group(), name=name or f"Pair{len(objects)}")


def discrete_groupoid(objects: Sequence[str], name: Optional[str] = None) -> FiniteGroupoid:
    k = len(objects)
    return FiniteGroupoid(
        name=name or f"Disc{k}",
        objects=tuple(objects),
        arrows=tuple(f"1{x}" for x in objects),
        src=tuple(range(k)),
        tgt=tuple(range(k)),
        comp={(a, a): a for a in range(k)},
        inv=tuple(range(k)),
        unit=tuple(range(k)),
    )


def trivial_groupoid(name: str = "1") -> FiniteGroupoid:
    return discrete_groupoid(["•"], name=name)


def disjoint_union(A: FiniteGroupoid, B: FiniteGroupoid, name: Optional[str] = None) -> FiniteGroupoid:
    """B's labels get a trailing ``'`` when they clash with A's."""

    def relabel(labels: Sequence[str], taken: Sequence[str]) -> tuple[str, ...]:
        return tuple(f"{x}'" if x in taken else x for x in labels)

    shift_o, shift_a = len(A.objects), len(A.arrows)
    comp = dict(A.comp)
    comp.update({(a + shift_a, b + shift_a): c + shift_a for (a, b), c in B.comp.items()})
    return FiniteGroupoid(
        name=name or f"{A.name}⊔{B.name}",
        objects=A.objects + relabel(B.objects, A.objects),
        arrows=A.arrows + relabel(B.arrows, A.arrows),
        src=A.src + tuple(x + shift_o for x in B.src),
        tgt=A.tgt + tuple(x + shift_o for x in B.tgt),
        comp=comp,
        inv=A.inv + tuple(a + shift_a for a in B.inv),
        unit=A.unit + tuple(a + shift_a for a in B.unit),
    )


# -- nerves ------------------------------------------------------------------------


def nerve_strings(G: FiniteGroupoid, N: int) -> list[list[tuple[int, ...]]]:
    """Level 0: ``(object,)``; level n >= 1: composable arrow strings, lexicographic."""
    levels: list[list[tuple[int, ...]]] = [[(x,) for x in range(len(G.objects))]]
    if N >= 1:
        levels.append([(a,) for a in range(len(G.arrows))])
    by_src: dict[int, list[int]] = {}
    for a in range(len(G.arrows)):
        by_src.setdefault(G.src[a], []).append(a)
    for _ in range(2, N + 1):
        levels.append([s + (b,) for s in levels[-1] for b in by_src.get(G.tgt[s[-1]], ())])
    return levels


def nerve(G: FiniteGroupoid, N: int = 3) -> TruncatedSimplicialSet:
    """The nerve truncated at N; ``d_1 = src``, ``d_0 = tgt``, ``s_0 = unit`` on low levels."""
    if N < 1:
        raise InvalidIndex(f"nerve truncation must be >= 1, got {N}")
    levels = nerve_strings(G, N)
    index = [{s: k for k, s in enumerate(level)} for level in levels]

    def vertex(s: tuple[int, ...], i: int) -> int:
        return G.src[s[i]] if i < len(s) else G.tgt[s[-1]]

    def face(s: tuple[int, ...], n: int, i: int) -> tuple[int, ...]:
        if n == 1:
            return (G.tgt[s[0]],) if i == 0 else (G.src[s[0]],)
        if i == 0:
            return s[1:]
        if i == n:
            return s[:-1]
        return s[: i - 1] + (G.comp[(s[i - 1], s[i])],) + s[i + 1 :]

    def degen(s: tuple[int, ...], n: int, i: int) -> tuple[int, ...]:
        if n == 0:
            return (G.unit[s[0]],)
        return s[:i] + (G.unit[vertex(s, i)],) + s[i:]

    faces = [[]] + [
        [[index[n - 1][face(s, n, i)] for s in levels[n]] for i in range(n + 1)]
        for n in range(1, N + 1)
    ]
    degens = [
        [[index[n + 1][degen(s, n, i)] for s in levels[n]] for i in range(n + 1)]
        for n in range(N)
    ] + [[]]
    labels = [[G.objects[x] for (x,) in levels[0]]] + [
        [tuple(G.arrows[a] for a in s) if n > 1 else G.arrows[s[0]] for s in levels[n]]
        for n in range(1, N + 1)
    ]
    X = from_tables(N, [len(level) for level in levels], faces, degens, labels, f"N{G.name}")
    logger.debug(f"Nerve {X.describe()}")
    return X


def _distinct_names(X: TruncatedSimplicialSet, n: int, prefix: str) -> tuple[str, ...]:
    names = tuple(str(v) for v in X.names(n))
    if len(set(names)) == len(names) and all(" " not in v for v in names):
        return names
    return tuple(f"{prefix}{k}" for k in X.cells(n))


def to_groupoid(X: TruncatedSimplicialSet, name: Optional[str] = None) -> FiniteGroupoid:
    """
    Read off the groupoid of a 1-groupoid.

    Composition is ``d_1`` of the unique Λ[2,1] filler; the right inverse comes
    from the Λ[2,0] filler of ``(unit(src α), α)`` and the left inverse from
    the Λ[2,2] filler of ``(α, unit(tgt α))``. Both must agree.

    Raises:
        NotA1Groupoid: the complex fails Kan(1) or unique filling above it
    """
    if X.N < 2:
        raise NotA1Groupoid(f"{X.name} is truncated below level 2")
    report = classify_n_groupoid(X, 1)
    if report.verdict == "fails":
        raise NotA1Groupoid(f"{X.name} is not a 1-groupoid", witness=report.witnesses)
    arrows = range(X.sizes[1])
    src = tuple(X.faces[1][1][a] for a in arrows)
    tgt = tuple(X.faces[1][0][a] for a in arrows)
    unit = tuple(X.degens[0][0][x] for x in X.cells(0))
    comp = {}
    for a in arrows:
        for b in arrows:
            if tgt[a] == src[b]:
                filler = fill_horn(X, 2, 1, (b, a))
                comp[(a, b)] = X.faces[2][1][filler.cell]
    inv = []
    for a in arrows:
        right = X.faces[2][0][fill_horn(X, 2, 0, (unit[src[a]], a)).cell]
        left = X.faces[2][2][fill_horn(X, 2, 2, (a, unit[tgt[a]])).cell]
        if left != right:
            raise NotA1Groupoid(
                f"left and right inverses of arrow {a} differ in {X.name}",
                witness={"arrow": a, "left": left, "right": right},
            )
        inv.append(right)
    try:
        return FiniteGroupoid(
            name=name or X.name,
            objects=_distinct_names(X, 0, "x"),
            arrows=_distinct_names(X, 1, "a"),
            src=src,
            tgt=tgt,
            comp=comp,
            inv=tuple(inv),
            unit=unit,
        )
    except ToolkitError as e:
        raise NotA1Groupoid(f"{X.name} does not yield a groupoid: {e.message}", witness=e.witness)


# -- functors ------------------------------------------------------------------------


class Functor(BaseModel):
    """A strict homomorphism of groupoids."""

    model_config = ConfigDict(frozen=True)

    name: str = "F"
    source: FiniteGroupoid
    target: FiniteGroupoid
    object_map: tuple[int, ...]
    arrow_map: tuple[int, ...]

    @model_validator(mode="after")
    def _validate_functor(self) -> "Functor":
        A, B = self.source, self.target
        if len(self.object_map) != len(A.objects) or len(self.arrow_map) != len(A.arrows):
            raise InvalidFunctor(f"{self.name} is not defined on all of {A.name}")
        for a, fa in enumerate(self.arrow_map):
            if B.src[fa] != self.object_map[A.src[a]] or B.tgt[fa] != self.object_map[A.tgt[a]]:
                raise InvalidFunctor(
                    f"{self.name} does not preserve endpoints of {A.arrows[a]}",
                    witness={"arrow": A.arrows[a]},
                )
        for x, u in enumerate(A.unit):
            if self.arrow_map[u] != B.unit[self.object_map[x]]:
                raise InvalidFunctor(f"{self.name} does not preserve the unit of {A.objects[x]}")
        for (a, b), c in A.comp.items():
            if B.comp[(self.arrow_map[a], self.arrow_map[b])] != self.arrow_map[c]:
                raise InvalidFunctor(
                    f"{self.name} does not preserve {A.arrows[a]}·{A.arrows[b]}",
                    witness={"pair": [A.arrows[a], A.arrows[b]]},
                )
        return self

    def __call__(self, a: int) -> int:
        return self.arrow_map[a]


def identity_functor(G: FiniteGroupoid) -> Functor:
    return Functor(
        name=f"id_{G.name}",
        source=G,
        target=G,
        object_map=tuple(range(len(G.objects))),
        arrow_map=tuple(range(len(G.arrows))),
    )


def compose_functors(F: Functor, H: Functor) -> Functor:
    """``H ∘ F``."""
    return Functor(
        name=f"{H.name}∘{F.name}",
        source=F.source,
        target=H.target,
        object_map=tuple(H.object_map[x] for x in F.object_map),
        arrow_map=tuple(H.arrow_map[a] for a in F.arrow_map),
    )


def functor_to_map(F: Functor, N: int = 3) -> SimplicialMap:
    """The induced map of nerves truncated at N."""
    source, target = nerve(F.source, N), nerve(F.target, N)
    strings = nerve_strings(F.target, N)
    index = [{s: k for k, s in enumerate(level)} for level in strings]
    levels = [tuple(index[0][(F.object_map[x],)] for (x,) in nerve_strings(F.source, 0)[0])]
    for n, level in enumerate(nerve_strings(F.source, N)[1:], start=1):
        levels.append(tuple(index[n][tuple(F.arrow_map[a] for a in s)] for s in level))
    return SimplicialMap(name=F.name, source=source, target=target, levels=tuple(levels))


def map_to_functor(f: SimplicialMap, name: Optional[str] = None) -> Functor:
    """The functor between the groupoids of two 1-groupoids."""
    A, B = to_groupoid(f.source), to_groupoid(f.target)
    return Functor(
        name=name or f.name, source=A, target=B, object_map=f.levels[0], arrow_map=f.levels[1]
    )


def find_groupoid_isomorphism(A: FiniteGroupoid, B: FiniteGroupoid) -> Optional[Functor]:
    """An isomorphism A → B found on 2-truncated nerves, or None."""
    if len(A.objects) != len(B.objects) or len(A.arrows) != len(B.arrows):
        return None
    iso = find_isomorphism(nerve(A, 2), nerve(B, 2))
    if iso is None:
        return None
    return Functor(name="iso", source=A, target=B, object_map=iso.levels[0], arrow_map=iso.levels[1])


def groupoids_isomorphic(A: FiniteGroupoid, B: FiniteGroupoid) -> bool:
    return find_groupoid_isomorphism(A, B) is not None