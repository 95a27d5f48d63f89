"""
Kan fibrations built from strict actions, their fibers and isomorphisms.
"""

import logging
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from app.actions.strict import StrictAction
from app.errors import InvalidIndex, NotAFibration, NotAStrictAction
from app.groupoids.groupoid_bridge import (
    FiniteGroupoid,
    Functor,
    functor_to_map,
    group_groupoid,
    groupoid_from_composition,
    nerve,
)
from app.groupoids.two_group import bg_two_cells, classifying_2group, crossed_module_to_grouplike
from app.simplicial.core import (
    SimplicialMap,
    TruncatedSimplicialSet,
    constant_map,
    fiber_product,
    from_tables,
    iterated_degeneracy,
    point,
    product,
)
from app.simplicial.hom_search import coskeletal_extension, find_isomorphism
from app.simplicial.kan_verify import CheckReport, check_fibration, fill_relative_horn

logger = logging.getLogger(__name__)


class FibrationBundle(BaseModel):
    """``π: K → G`` with its fibration certificate and fiber inclusion."""

    model_config = ConfigDict(frozen=True)

    name: str = "K"
    K: TruncatedSimplicialSet
    G: TruncatedSimplicialSet
    pi: SimplicialMap
    incl: Optional[SimplicialMap] = None
    n: int = 1
    base_vertex: int = 0
    certificate: CheckReport
    action: Optional[StrictAction] = None

    @model_validator(mode="after")
    def _validate_bundle(self) -> "FibrationBundle":
        if self.G.sizes[0] and not 0 <= self.base_vertex < self.G.sizes[0]:
            raise InvalidIndex(f"base vertex {self.base_vertex} is not a vertex of {self.G.name}")
        if self.certificate.verdict == "fails":
            raise NotAFibration(
                f"{self.name} is not a Kan fibration: {self.certificate.condition}",
                witness=self.certificate.witnesses,
            )
        if self.certificate.verdict == "partial":
            logger.warning(f"{self.name}: fibration certificate is partial ({'; '.join(self.certificate.notes)})")
        if self.incl is not None:
            depth = min(self.incl.depth, self.pi.depth)
            for n in range(depth + 1):
                unit = iterated_degeneracy(self.G, self.base_vertex, n)
                if any(self.pi.levels[n][k] != unit for k in self.incl.levels[n]):
                    raise NotAFibration(f"fiber inclusion of {self.name} leaves the fiber over the base point")
        return self

    def describe(self) -> str:
        return f"{self.name}: {self.K.describe()} over {self.G.describe()} ({self.certificate.verdict})"


def make_bundle(
    name: str,
    pi: SimplicialMap,
    n: int,
    incl: Optional[SimplicialMap] = None,
    action: Optional[StrictAction] = None,
    base_vertex: int = 0,
) -> FibrationBundle:
    """Certify ``pi`` as a Kan fibration at level ``n`` and wrap it; ``incl`` lands over ``base_vertex``."""
    certificate = check_fibration(pi, n)
    return FibrationBundle(
        name=name,
        K=pi.source,
        G=pi.target,
        pi=pi,
        incl=incl,
        n=n,
        base_vertex=base_vertex,
        certificate=certificate,
        action=action,
    )


def _fibration_level(A: StrictAction) -> int:
    return 1 if A.groupoid.is_discrete() else 2


# -- 1-group actions -------------------------------------------------------------


def action_groupoid(A: StrictAction) -> tuple[FiniteGroupoid, Functor, Functor]:
    """
    The groupoid ``X¹ × G ⇉ X⁰`` with ``s(α, g) = s(α)``, ``t(α, g) = t(α)·g``
    and ``(α, g)·(β, h) = (α·(β·g⁻¹), gh)``.

    Returns the groupoid, its projection to BG and the fiber inclusion.
    """
    if A.group is None:
        raise NotAStrictAction(f"{A.name} is a crossed-module action; use the 2-group construction")
    X, G = A.groupoid, A.group
    m = G.order

    def arrow(a: int, g: int) -> int:
        return a * m + g

    cells = [(a, g) for a in range(len(X.arrows)) for g in range(m)]
    comp = {}
    for a, g in cells:
        end = A.right_object(X.tgt[a], g)
        for b in range(len(X.arrows)):
            if X.src[b] != end:
                continue
            for h in range(m):
                moved = A.right_arrow(b, G.inv(g))
                comp[(arrow(a, g), arrow(b, h))] = arrow(X.comp[(a, moved)], G.mul(g, h))
    K = FiniteGroupoid(
        name=f"{X.name}⋊{G.name}",
        objects=X.objects,
        arrows=tuple(f"{X.arrows[a]}*{G.elements[g]}" for a, g in cells),
        src=tuple(X.src[a] for a, _ in cells),
        tgt=tuple(A.right_object(X.tgt[a], g) for a, g in cells),
        comp=comp,
        inv=tuple(arrow(A.right_arrow(X.inv[a], g), G.inv(g)) for a, g in cells),
        unit=tuple(arrow(X.unit[x], G.identity) for x in range(len(X.objects))),
    )
    BG = group_groupoid(G)
    proj = Functor(
        name="π",
        source=K,
        target=BG,
        object_map=(0,) * len(X.objects),
        arrow_map=tuple(g for _, g in cells),
    )
    incl = Functor(
        name="ι",
        source=X,
        target=K,
        object_map=tuple(range(len(X.objects))),
        arrow_map=tuple(arrow(a, G.identity) for a in range(len(X.arrows))),
    )
    return K, proj, incl


def strict_action_groupoid(A: StrictAction, N: int = 3) -> FibrationBundle:
    """The nerve of the action groupoid over ``B G`` with its certificate."""
    _, proj, incl = action_groupoid(A)
    pi = functor_to_map(proj, N)
    bundle = make_bundle(
        f"K({A.name})", pi, _fibration_level(A), incl=functor_to_map(incl, N), action=A
    )
    logger.info(f"Built {bundle.describe()}")
    return bundle


# -- crossed-module actions ----------------------------------------------------------


def _extend_map_coskeletally(
    levels: list[list[int]], source: TruncatedSimplicialSet, target: TruncatedSimplicialSet
) -> list[list[int]]:
    """Fill the remaining levels of a map into a complex whose top levels are boundaries."""
    for n in range(len(levels), min(source.N, target.N) + 1):
        index = target.boundary_index(n)
        level = []
        for c in source.cells(n):
            faces = tuple(levels[n - 1][source.faces[n][i][c]] for i in range(n + 1))
            found = index.get(faces, ())
            if len(found) != 1:
                raise NotAFibration(
                    f"{n}-cell {c} of {source.name} has no unique image in {target.name}",
                    witness={"level": n, "cell": c},
                )
            level.append(found[0])
        levels.append(level)
    return levels


def strict_2group_action_groupoid(A: StrictAction, N: int = 4) -> FibrationBundle:
    """
    The fibration over ``B𝒢`` of a crossed-module action.

    ``K_1`` holds ``(g, x, b)`` with ``b: x·g → x′``; a 2-cell over ``g₀₁₂``
    is a triple ``(k₁₂, k₀₂, k₀₁)`` with ``(b₀₁·α₁₂)·b₁₂ = Θ_x(g₀₁₂)·b₀₂``.
    Levels 3 and 4 are boundaries lying over ``B𝒢``.
    """
    if A.crossed_module is None:
        raise NotAStrictAction(f"{A.name} is a group action; use the 1-group construction")
    if N not in (3, 4):
        raise InvalidIndex(f"2-group action complexes are built at level 3 or 4, got {N}")
    XM, X = A.crossed_module, A.groupoid
    G, H = XM.G, XM.H
    L = crossed_module_to_grouplike(XM)
    BG = classifying_2group(L, N)
    cells2_bg = bg_two_cells(L)
    objs, arrs = range(len(X.objects)), range(len(X.arrows))

    k1 = [(g, x, b) for g in range(G.order) for x in objs for b in arrs if X.src[b] == A.right_object(x, g)]
    index1 = {c: k for k, c in enumerate(k1)}
    over: dict[tuple[int, int], list[int]] = {}
    for k, (g, x, _) in enumerate(k1):
        over.setdefault((g, x), []).append(k)

    k2 = []
    for s, (a12, a02, a01, arrow) in enumerate(cells2_bg):
        h = arrow % H.order
        product_object = G.mul(a01, a12)
        for x0 in objs:
            twist = A.theta_at(h, A.right_object(x0, product_object))
            for k01 in over.get((a01, x0), ()):
                b01 = k1[k01][2]
                x1 = X.tgt[b01]
                lhs_head = A.right_arrow(b01, a12)
                for k12 in over.get((a12, x1), ()):
                    b12 = k1[k12][2]
                    lhs = X.comp[(lhs_head, b12)]
                    for k02 in over.get((a02, x0), ()):
                        b02 = k1[k02][2]
                        if X.tgt[b02] == X.tgt[b12] and X.comp[(twist, b02)] == lhs:
                            k2.append((s, k12, k02, k01))
    index2 = {c: k for k, c in enumerate(k2)}

    def s0(x: int) -> int:
        return index1[(G.identity, x, X.unit[x])]

    faces = [
        [],
        [[X.tgt[b] for _, _, b in k1], [x for _, x, _ in k1]],
        [[c[1] for c in k2], [c[2] for c in k2], [c[3] for c in k2]],
    ]
    degens = [
        [[s0(x) for x in objs]],
        [
            [index2[(BG.degens[1][0][g], k, k, s0(x))] for k, (g, x, _) in enumerate(k1)],
            [index2[(BG.degens[1][1][g], s0(X.tgt[b]), k, k)] for k, (g, x, b) in enumerate(k1)],
        ],
        [],
    ]
    labels = [
        list(X.objects),
        [f"({G.elements[g]},{X.objects[x]},{X.arrows[b]})" for g, x, b in k1],
        k2,
    ]
    base = from_tables(2, [len(objs), len(k1), len(k2)], faces, degens, labels, f"K({A.name})")
    bg3 = BG.boundary_index(3)

    def lies_over_bg(boundary: tuple[int, ...]) -> bool:
        return tuple(k2[c][0] for c in boundary) in bg3

    K = coskeletal_extension(base, lies_over_bg)
    if N == 4:
        K = coskeletal_extension(K)
    pi_levels = _extend_map_coskeletally(
        [[0] * len(objs), [g for g, _, _ in k1], [c[0] for c in k2]], K, BG
    )
    pi = SimplicialMap(name="π", source=K, target=BG, levels=tuple(tuple(v) for v in pi_levels))

    fiber_nerve = nerve(X, N)
    unit_2cell = BG.degens[1][0][G.identity]
    arrow_cell = [index1[(G.identity, X.src[a], a)] for a in arrs]
    level2 = []
    for c in fiber_nerve.cells(2):
        d0, d1, d2 = (fiber_nerve.faces[2][i][c] for i in range(3))
        level2.append(index2[(unit_2cell, arrow_cell[d0], arrow_cell[d1], arrow_cell[d2])])
    incl_levels = _extend_map_coskeletally([list(objs), arrow_cell, level2], fiber_nerve, K)
    incl = SimplicialMap(name="ι", source=fiber_nerve, target=K, levels=tuple(tuple(v) for v in incl_levels))
    bundle = make_bundle(K.name, pi, _fibration_level(A), incl=incl, action=A)
    logger.info(f"Built {bundle.describe()}")
    return bundle


def trivial_bundle(
    base: TruncatedSimplicialSet, X: FiniteGroupoid, n: int = 2, base_vertex: int = 0
) -> FibrationBundle:
    """
    ``base × nerve(𝒳) → base``; cell ``(b, x)`` has id ``b * |nerve_n| + x``.

    The fiber inclusion lands over ``base_vertex``.
    """
    if not 0 <= base_vertex < base.sizes[0]:
        raise InvalidIndex(f"{base_vertex} is not a vertex of {base.name}")
    F = nerve(X, base.N)
    K = product(base, F)
    pi = SimplicialMap(
        name="pr1",
        source=K,
        target=base,
        levels=tuple(tuple(c // F.sizes[m] for c in K.cells(m)) for m in range(K.N + 1)),
    )
    incl = SimplicialMap(
        name="ι",
        source=F,
        target=K,
        levels=tuple(
            tuple(iterated_degeneracy(base, base_vertex, m) * F.sizes[m] + x for x in F.cells(m))
            for m in range(K.N + 1)
        ),
    )
    bundle = make_bundle(K.name, pi, n, incl=incl, base_vertex=base_vertex)
    logger.info(f"Built {bundle.describe()}")
    return bundle


# -- fibers ------------------------------------------------------------------------


def fiber_with_projection(
    bundle: FibrationBundle, y0: int = 0
) -> tuple[TruncatedSimplicialSet, SimplicialMap]:
    """``Δ[0] ×_G K`` over the vertex ``y0`` and its map into K."""
    if not 0 <= y0 < bundle.G.sizes[0]:
        raise InvalidIndex(f"{y0} is not a vertex of {bundle.G.name}")
    pt = constant_map(point(bundle.G.N), bundle.G, y0)
    P, _, pr2 = fiber_product(pt, bundle.pi, name=f"Fib_{y0}({bundle.name})")
    return P, pr2


def fiber(bundle: FibrationBundle, y0: int = 0) -> TruncatedSimplicialSet:
    return fiber_with_projection(bundle, y0)[0]


def fiber_groupoid(bundle: FibrationBundle, y0: int = 0) -> tuple[FiniteGroupoid, list[int], list[int]]:
    """
    The fiber as a groupoid read off K: objects over ``y0``, arrows over
    ``s₀(y0)``, composition by relative Λ[2,1] lifts.

    Returns the groupoid and the K ids of its objects and arrows.
    """
    K, G, pi = bundle.K, bundle.G, bundle.pi
    unit1 = G.degens[0][0][y0]
    unit2 = G.degens[1][0][unit1]
    objects = [x for x in K.cells(0) if pi.levels[0][x] == y0]
    arrows = [a for a in K.cells(1) if pi.levels[1][a] == unit1]
    o_pos = {x: k for k, x in enumerate(objects)}
    a_pos = {a: k for k, a in enumerate(arrows)}
    by_src: dict[int, list[int]] = {}
    for a in arrows:
        by_src.setdefault(K.faces[1][1][a], []).append(a)
    comp = {}
    for a in arrows:
        for b in by_src.get(K.faces[1][0][a], ()):
            filler = fill_relative_horn(pi, 2, 1, (b, a), unit2)
            comp[(a_pos[a], a_pos[b])] = a_pos[K.faces[2][1][filler.cell]]
    F = groupoid_from_composition(
        f"Fib({bundle.name})",
        [str(K.label(0, x)) for x in objects],
        [str(K.label(1, a)) for a in arrows],
        [o_pos[K.faces[1][1][a]] for a in arrows],
        [o_pos[K.faces[1][0][a]] for a in arrows],
        comp,
    )
    return F, objects, arrows


def bundle_isomorphism(E1: FibrationBundle, E2: FibrationBundle) -> Optional[SimplicialMap]:
    """A •-isomorphism ``E1.K → E2.K`` commuting with the projections, or None."""
    if E1.G.sizes[: min(E1.G.N, E2.G.N) + 1] != E2.G.sizes[: min(E1.G.N, E2.G.N) + 1]:
        return None

    def over_same_cell(n: int, a: int, b: int) -> bool:
        if n > min(E1.pi.depth, E2.pi.depth):
            return True
        return E1.pi.levels[n][a] == E2.pi.levels[n][b]

    return find_isomorphism(E1.K, E2.K, compatible=over_same_cell)
