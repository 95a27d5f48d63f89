"""
Crossed modules, semi-strict group-like groupoids and classifying 2-groups.

A crossed module ``∂: H → G`` presents the group-like groupoid with objects
``G`` and arrows ``(g, h): g → g·∂h``. Its classifying 2-group has one
0-cell, 1-cells the objects, 2-cells ``g₀₁₂: α₀₁⋆α₁₂ → α₀₂``, 3-cells cut out
by the coherence equation and 4-cells all compatible boundaries.
"""

import logging
from itertools import product as cartesian
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import (
    CoherenceFailure,
    DepthExceedsTruncation,
    IdentityViolation,
    InvalidCrossedModule,
    NotATransformation,
)
from app.groupoids.groupoid_bridge import FiniteGroupoid
from app.groupoids.groups import FiniteGroup, is_automorphism, is_homomorphism
from app.simplicial.core import TruncatedSimplicialSet, apply_operator, from_tables
from app.simplicial.hom_search import coskeletal_extension, prism_maps, standard_prism

logger = logging.getLogger(__name__)


class CrossedModule(BaseModel):
    """``bnd: H → G`` with ``act[g][h]`` a left action of G on H."""

    model_config = ConfigDict(frozen=True)

    name: str = "XM"
    H: FiniteGroup
    G: FiniteGroup
    bnd: tuple[int, ...]
    act: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def _validate_crossed_module(self) -> "CrossedModule":
        H, G = self.H, self.G
        if not is_homomorphism(self.bnd, H, G):
            raise InvalidCrossedModule(f"bnd of {self.name} is not a homomorphism")
        if len(self.act) != G.order:
            raise InvalidCrossedModule(f"action of {self.name} is not defined on all of {G.name}")
        for g in range(G.order):
            if not is_automorphism(self.act[g], H):
                raise InvalidCrossedModule(
                    f"act({G.elements[g]}, ·) is not an automorphism of {H.name}",
                    witness={"g": G.elements[g]},
                )
        if any(self.act[G.identity][h] != h for h in range(H.order)):
            raise InvalidCrossedModule(f"the identity of {G.name} acts nontrivially")
        for g1, g2, h in cartesian(range(G.order), range(G.order), range(H.order)):
            if self.act[G.mul(g1, g2)][h] != self.act[g1][self.act[g2][h]]:
                raise InvalidCrossedModule(
                    f"act of {self.name} is not a left action",
                    witness={"g1": G.elements[g1], "g2": G.elements[g2], "h": H.elements[h]},
                )
        for g, h in cartesian(range(G.order), range(H.order)):
            if self.bnd[self.act[g][h]] != G.product([g, self.bnd[h], G.inv(g)]):
                raise InvalidCrossedModule(
                    f"bnd of {self.name} is not equivariant",
                    witness={"g": G.elements[g], "h": H.elements[h]},
                )
        for h1, h2 in cartesian(range(H.order), repeat=2):
            if self.act[self.bnd[h1]][h2] != H.product([h1, h2, H.inv(h1)]):
                raise InvalidCrossedModule(
                    f"Peiffer identity fails in {self.name}",
                    witness={"h": H.elements[h1], "h'": H.elements[h2]},
                )
        return self

    def kernel(self) -> list[int]:
        return [h for h in range(self.H.order) if self.bnd[h] == self.G.identity]

    def image(self) -> list[int]:
        return sorted(set(self.bnd))


def conjugation_action(G: FiniteGroup, members: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """``act[g][h] = g h g⁻¹`` on a normal subgroup listed by ``members``."""
    position = {a: k for k, a in enumerate(members)}
    return tuple(
        tuple(position[G.product([g, a, G.inv(g)])] for a in members) for g in range(G.order)
    )


def trivial_action(G: FiniteGroup, H: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(range(H.order)) for _ in range(G.order))


# -- group-like groupoids -------------------------------------------------------


class GroupLikeGroupoid(BaseModel):
    """A groupoid with strictly associative product, strict unit and inverse data."""

    model_config = ConfigDict(frozen=True)

    name: str = "GL"
    groupoid: FiniteGroupoid
    star_objects: tuple[tuple[int, ...], ...]
    star_arrows: dict[tuple[int, int], int]
    unit_object: int
    iota_objects: tuple[int, ...]
    iota_arrows: tuple[int, ...]
    psi_l: tuple[int, ...] = Field(description="per object, ι(x)⋆x → e")
    psi_r: tuple[int, ...] = Field(description="per object, x⋆ι(x) → e")

    @model_validator(mode="after")
    def _validate_grouplike(self) -> "GroupLikeGroupoid":
        validate_grouplike(self)
        return self

    def star(self, a: int, b: int) -> int:
        return self.star_arrows[(a, b)]

    def compose(self, a: int, b: int) -> int:
        return self.groupoid.comp[(a, b)]

    def one(self, x: int) -> int:
        return self.groupoid.unit[x]


def validate_grouplike(L: GroupLikeGroupoid) -> None:
    """Raises CoherenceFailure on the first violated law."""
    X = L.groupoid
    objs, arrs = range(len(X.objects)), range(len(X.arrows))

    def fail(message: str, **witness) -> None:
        raise CoherenceFailure(f"{L.name}: {message}", witness=witness or None)

    for a, b in cartesian(arrs, repeat=2):
        ab = L.star_arrows.get((a, b))
        if ab is None:
            fail("star is not total on arrows", pair=[X.arrows[a], X.arrows[b]])
        if X.src[ab] != L.star_objects[X.src[a]][X.src[b]] or X.tgt[ab] != L.star_objects[X.tgt[a]][X.tgt[b]]:
            fail("star does not respect endpoints", pair=[X.arrows[a], X.arrows[b]])
    for x, y in cartesian(objs, repeat=2):
        if L.star(X.unit[x], X.unit[y]) != X.unit[L.star_objects[x][y]]:
            fail("star does not preserve units", pair=[X.objects[x], X.objects[y]])
    for (a, a2), aa in X.comp.items():
        for (b, b2), bb in X.comp.items():
            if L.star(aa, bb) != X.comp[(L.star(a, b), L.star(a2, b2))]:
                fail("star is not a functor", arrows=[X.arrows[a], X.arrows[a2], X.arrows[b], X.arrows[b2]])
    for x, y, z in cartesian(objs, repeat=3):
        if L.star_objects[L.star_objects[x][y]][z] != L.star_objects[x][L.star_objects[y][z]]:
            fail("star is not associative on objects", triple=[X.objects[x], X.objects[y], X.objects[z]])
    for a, b, c in cartesian(arrs, repeat=3):
        if L.star(L.star(a, b), c) != L.star(a, L.star(b, c)):
            fail("star is not associative on arrows", triple=[X.arrows[a], X.arrows[b], X.arrows[c]])
    e, one_e = L.unit_object, X.unit[L.unit_object]
    for x in objs:
        if L.star_objects[e][x] != x or L.star_objects[x][e] != x:
            fail("unit object is not a strict unit", object=X.objects[x])
    for a in arrs:
        if L.star(one_e, a) != a or L.star(a, one_e) != a:
            fail("unit arrow is not a strict unit", arrow=X.arrows[a])
    for a in arrs:
        i = L.iota_arrows[a]
        if X.src[i] != L.iota_objects[X.src[a]] or X.tgt[i] != L.iota_objects[X.tgt[a]]:
            fail("iota does not respect endpoints", arrow=X.arrows[a])
    for x in objs:
        pl, pr = L.psi_l[x], L.psi_r[x]
        if X.src[pl] != L.star_objects[L.iota_objects[x]][x] or X.tgt[pl] != e:
            fail("psi_l has the wrong endpoints", object=X.objects[x])
        if X.src[pr] != L.star_objects[x][L.iota_objects[x]] or X.tgt[pr] != e:
            fail("psi_r has the wrong endpoints", object=X.objects[x])
    for a in arrs:
        x, y = X.src[a], X.tgt[a]
        if X.comp[(L.star(L.iota_arrows[a], a), L.psi_l[y])] != L.psi_l[x]:
            fail("psi_l is not natural", arrow=X.arrows[a])
        if X.comp[(L.star(a, L.iota_arrows[a]), L.psi_r[y])] != L.psi_r[x]:
            fail("psi_r is not natural", arrow=X.arrows[a])


def crossed_module_to_grouplike(XM: CrossedModule) -> GroupLikeGroupoid:
    """
    Objects G, arrows ``(g, h): g → g·∂h`` with index ``g·|H| + h``.

    ``(g, h)·(g∂h, h′) = (g, hh′)``, ``(g₁, h₁)⋆(g₂, h₂) = (g₁g₂, act(g₂⁻¹, h₁)h₂)``
    and ``ι(g, h) = (g⁻¹, act(g, h⁻¹))``; inverse transformations are units.
    """
    H, G = XM.H, XM.G
    m = H.order

    def arrow(g: int, h: int) -> int:
        return g * m + h

    cells = [(g, h) for g in range(G.order) for h in range(m)]
    target = [G.mul(g, XM.bnd[h]) for g, h in cells]
    comp = {
        (arrow(g, h), arrow(target[arrow(g, h)], h2)): arrow(g, H.mul(h, h2))
        for g, h in cells
        for h2 in range(m)
    }
    groupoid = FiniteGroupoid(
        name=XM.name,
        objects=G.elements,
        arrows=tuple(f"{G.elements[g]}:{H.elements[h]}" for g, h in cells),
        src=tuple(g for g, _ in cells),
        tgt=tuple(target),
        comp=comp,
        inv=tuple(arrow(target[arrow(g, h)], H.inv(h)) for g, h in cells),
        unit=tuple(arrow(g, H.identity) for g in range(G.order)),
    )
    star_arrows = {
        (arrow(g1, h1), arrow(g2, h2)): arrow(G.mul(g1, g2), H.mul(XM.act[G.inv(g2)][h1], h2))
        for g1, h1 in cells
        for g2, h2 in cells
    }
    iota_objects = tuple(G.inv(g) for g in range(G.order))
    return GroupLikeGroupoid(
        name=XM.name,
        groupoid=groupoid,
        star_objects=G.table,
        star_arrows=star_arrows,
        unit_object=G.identity,
        iota_objects=iota_objects,
        iota_arrows=tuple(arrow(G.inv(g), XM.act[g][H.inv(h)]) for g, h in cells),
        psi_l=tuple(groupoid.unit[G.identity] for _ in range(G.order)),
        psi_r=tuple(groupoid.unit[G.identity] for _ in range(G.order)),
    )


# -- classifying 2-group -----------------------------------------------------------


def bg_two_cells(L: GroupLikeGroupoid) -> list[tuple[int, int, int, int]]:
    """2-cells ``(α₁₂, α₀₂, α₀₁, g₀₁₂)`` in the order used by ``classifying_2group``."""
    X = L.groupoid
    objs = range(len(X.objects))
    out = []
    for a12, a02, a01 in cartesian(objs, repeat=3):
        for g in X.hom(L.star_objects[a01][a12], a02):
            out.append((a12, a02, a01, g))
    return out


def coherence_holds(L: GroupLikeGroupoid, g123: int, g023: int, g013: int, g012: int, a01: int, a23: int) -> bool:
    """``(1_{α₀₁} ⋆ g₁₂₃)·g₀₁₃ = (g₀₁₂ ⋆ 1_{α₂₃})·g₀₂₃``."""
    left = L.groupoid.comp.get((L.star(L.one(a01), g123), g013))
    right = L.groupoid.comp.get((L.star(g012, L.one(a23)), g023))
    return left is not None and left == right


def classifying_2group(
    source: "CrossedModule | GroupLikeGroupoid", N: int = 4, name: Optional[str] = None
) -> TruncatedSimplicialSet:
    """
    B𝒢 truncated at ``N`` (3 or 4).

    Level 3 holds the compatible boundaries satisfying the coherence equation;
    level 4 is ``Hom(∂Δ[4], sk₃ B𝒢)``.
    """
    L = crossed_module_to_grouplike(source) if isinstance(source, CrossedModule) else source
    if N not in (3, 4):
        raise DepthExceedsTruncation(f"classifying 2-group is built at level 3 or 4, got {N}")
    X = L.groupoid
    n_obj = len(X.objects)
    e = L.unit_object
    cells2 = bg_two_cells(L)
    index2 = {c: k for k, c in enumerate(cells2)}
    faces = [
        [],
        [[0] * n_obj, [0] * n_obj],
        [[c[0] for c in cells2], [c[1] for c in cells2], [c[2] for c in cells2]],
    ]
    degens = [
        [[e]],
        [
            [index2[(a, a, e, L.one(a))] for a in range(n_obj)],
            [index2[(e, a, a, L.one(a))] for a in range(n_obj)],
        ],
        [],
    ]
    labels = [
        ["•"],
        list(X.objects),
        [(X.objects[a12], X.objects[a02], X.objects[a01], X.arrows[g]) for a12, a02, a01, g in cells2],
    ]
    base = from_tables(2, [1, n_obj, len(cells2)], faces, degens, labels, name or f"B{L.name}")

    def coherent(boundary: tuple[int, ...]) -> bool:
        c123, c023, c013, c012 = (cells2[k] for k in boundary)
        return coherence_holds(L, c123[3], c023[3], c013[3], c012[3], c012[2], c123[0])

    level3 = coskeletal_extension(base, coherent)
    out = level3 if N == 3 else coskeletal_extension(level3)
    logger.info(f"Classifying 2-group {out.describe()}")
    return out


def classifying_sizes(g_order: int, h_order: int, N: int = 4) -> tuple[int, ...]:
    """Level sizes ``|G|ⁿ·|H|^(n(n-1)/2)`` of the classifying 2-group of ``H → G``."""
    return tuple(g_order**n * h_order ** (n * (n - 1) // 2) for n in range(N + 1))


def two_cell_arrow(L: GroupLikeGroupoid, cell: int) -> int:
    """The arrow ``g₀₁₂`` carried by a 2-cell id of ``classifying_2group(L)``."""
    return bg_two_cells(L)[cell][3]


# -- cylinders and transformations ---------------------------------------------------


class Transformation(BaseModel):
    """A square in G with unit verticals and unit bottom; ``top`` is the new unit."""

    model_config = ConfigDict(frozen=True)

    tables: tuple[tuple[int, ...], ...]
    bottom: int
    top: int


def _unit_edge(G: TruncatedSimplicialSet) -> int:
    return G.degens[0][0][0]


def enumerate_cylinders(
    G: TruncatedSimplicialSet, alpha: int, n: int, bottom: Optional[int] = None
) -> list[tuple[tuple[int, ...], ...]]:
    """
    Maps ``Δ[n] × Δ[1] → G`` whose vertical edges are all ``alpha``.

    ``bottom`` optionally fixes the restriction to ``Δ[n] × {0}``.
    """
    if n + 1 > G.N:
        raise DepthExceedsTruncation(
            f"α-cylinders of dimension {n} need {G.name} up to level {n + 1}",
            witness={"needed": n + 1, "available": G.N},
        )
    P = standard_prism(n, 1)
    fixed = {P.vertical(i): alpha for i in range(n + 1)}
    if bottom is not None:
        fixed[P.layer(0)] = bottom
    _, maps = prism_maps(G, n, 1, fixed=fixed)
    return maps


def transformations(G: TruncatedSimplicialSet) -> list[Transformation]:
    """e-cylinders starting at the unit 1-cell."""
    e = _unit_edge(G)
    P = standard_prism(1, 1)
    top = P.layer(1)
    return [
        Transformation(tables=t, bottom=e, top=t[top[0]][top[1]])
        for t in enumerate_cylinders(G, e, 1, bottom=e)
    ]


def as_transformation(G: TruncatedSimplicialSet, tables: Sequence[Sequence[int]]) -> Transformation:
    """Validate prism tables as a transformation out of the unit."""
    P = standard_prism(1, 1)
    e = _unit_edge(G)
    tables = tuple(tuple(level) for level in tables)
    try:
        found = [t for t in enumerate_cylinders(G, e, 1, bottom=e) if t == tables]
    except DepthExceedsTruncation:
        found = []
    if not found:
        raise NotATransformation(f"tables do not describe a transformation from the unit of {G.name}")
    bottom, top = P.layer(0), P.layer(1)
    return Transformation(tables=tables, bottom=tables[bottom[0]][bottom[1]], top=tables[top[0]][top[1]])


def degenerate_transformation(G: TruncatedSimplicialSet) -> Transformation:
    """The constant cylinder on the unit."""
    e = _unit_edge(G)
    P = standard_prism(1, 1)
    return as_transformation(G, P.constant_tables(G, e))


def unit_elements(G: TruncatedSimplicialSet) -> dict[int, list[Transformation]]:
    """Unit elements with their witnessing transformations."""
    out: dict[int, list[Transformation]] = {}
    for omega in transformations(G):
        out.setdefault(omega.top, []).append(omega)
    return dict(sorted(out.items()))


def reunitize(G: TruncatedSimplicialSet, omega: Transformation, name: Optional[str] = None) -> TruncatedSimplicialSet:
    """
    Same cells and faces with degeneracies rebuilt around ``e_ω = omega.top``.

    ``s_i`` of a cell g is the top of the unique prism over ``s_i(g)`` whose
    square over the edge ``(i, i+1)`` is ω and whose other edge squares are
    constant; the top level is forced by the simplicial identities.

    Raises:
        NotATransformation: ω is not a transformation out of the unit
        CoherenceFailure: a prism is not unique or the identities fail
    """
    if G.N != 4 or G.sizes[0] != 1:
        raise NotATransformation(f"{G.name} is not a 2-group truncated at 4")
    omega = as_transformation(G, omega.tables)
    square = standard_prism(1, 1)
    e_new = omega.top
    new_degens: list[list[list[int]]] = [[[e_new]]]
    for n in range(1, G.N - 1):
        P = standard_prism(n + 1, 1)
        level = []
        for i in range(n + 1):
            table = []
            for g in G.cells(n):
                old = G.degens[n][i][g]
                fixed = {P.layer(0): old}
                for a in range(n + 2):
                    for b in range(a + 1, n + 2):
                        if (a, b) == (i, i + 1):
                            source = omega.tables
                        else:
                            edge = apply_operator(G, n + 1, old, (a, b))
                            source = square.constant_tables(G, edge)
                        rename = {a: 0, b: 1}
                        for cell_level, cell in P.cells_over((a, b)):
                            first, second = P.complex.labels[cell_level][cell]
                            fixed[(cell_level, cell)] = square.value(
                                G, source, tuple(rename[v] for v in first), second
                            )
                _, prisms = prism_maps(G, n + 1, 1, fixed=fixed, limit=2)
                if len(prisms) != 1:
                    raise CoherenceFailure(
                        f"{len(prisms)} prisms realize s_{i} of {n}-cell {g} around e_ω",
                        witness={"level": n, "degeneracy": i, "cell": g, "prisms": len(prisms)},
                    )
                top = P.layer(1)
                table.append(prisms[0][top[0]][top[1]])
            level.append(table)
        new_degens.append(level)
    top_level = G.N - 1
    boundary = G.boundary_index(G.N)
    level = []
    for j in range(top_level + 1):
        table = []
        for x in G.cells(top_level):
            faces = []
            for i in range(top_level + 2):
                if i < j:
                    faces.append(new_degens[top_level - 1][j - 1][G.faces[top_level][i][x]])
                elif i in (j, j + 1):
                    faces.append(x)
                else:
                    faces.append(new_degens[top_level - 1][j][G.faces[top_level][i - 1][x]])
            found = boundary.get(tuple(faces), ())
            if len(found) != 1:
                raise CoherenceFailure(
                    f"s_{j} of {top_level}-cell {x} is not forced in {G.name}",
                    witness={"level": top_level, "degeneracy": j, "cell": x},
                )
            table.append(found[0])
        level.append(table)
    new_degens.append(level)
    new_degens.append([])
    try:
        out = from_tables(
            G.N, G.sizes, G.faces, new_degens, [list(lv) for lv in G.labels] or None, name or f"{G.name}_ω"
        )
    except IdentityViolation as e:
        raise CoherenceFailure(f"reunitized degeneracies break an identity: {e.message}", witness=e.witness)
    logger.info(f"Reunitized {G.name} around 1-cell {e_new}")
    return out
