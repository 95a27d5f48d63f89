"""
Strictification of a fibration over the nerve of a group.

The total space groupoid is pulled back to ``EG`` (objects G, a unique arrow
between any two), which carries the free left-translation action.
"""

import logging

from app.actions.bundles import FibrationBundle, fiber_groupoid
from app.actions.strict import StrictAction
from app.errors import BaseNotA1Group, NotA1Groupoid
from app.groupoids.groupoid_bridge import FiniteGroupoid, Functor, functor_to_map, to_groupoid
from app.groupoids.groups import FiniteGroup
from app.simplicial.core import SimplicialMap
from app.simplicial.kan_verify import classify_n_groupoid

logger = logging.getLogger(__name__)


def base_group(bundle: FibrationBundle) -> FiniteGroup:
    """
    The group whose nerve is the base; element ids are base 1-cell ids.

    Raises:
        BaseNotA1Group: the base has several vertices or is not a 1-groupoid
    """
    G = bundle.G
    if G.sizes[0] != 1:
        raise BaseNotA1Group(f"{G.name} has {G.sizes[0]} vertices", witness={"vertices": G.sizes[0]})
    if G.N < 2 or classify_n_groupoid(G, 1).verdict == "fails":
        raise BaseNotA1Group(f"{G.name} is not the nerve of a group")
    groupoid = to_groupoid(G)
    n = len(groupoid.arrows)
    return FiniteGroup(
        name=G.name,
        elements=groupoid.arrows,
        table=tuple(tuple(groupoid.comp[(a, b)] for b in range(n)) for a in range(n)),
    )


def strictify(bundle: FibrationBundle, N: int = 3) -> tuple[FiniteGroupoid, StrictAction, SimplicialMap]:
    """
    ``𝒳̃ = K ×_{BG} EG`` with ``Φ(h): (x, g) ↦ (x, hg)`` and the equivalence
    ``m ↦ (m, e)`` from the fiber.

    Objects of 𝒳̃ are pairs ``(x, g)`` with x a vertex of K; an arrow
    ``(k, g): (d₁k, g) → (d₀k, g·π(k))`` composes as ``(k, g)(k′, g·π(k)) = (k·k′, g)``.
    """
    group = base_group(bundle)
    try:
        total = to_groupoid(bundle.K)
    except NotA1Groupoid as e:
        raise BaseNotA1Group(f"total space of {bundle.name} is not a 1-groupoid: {e.message}", witness=e.witness)
    m = group.order
    pi1 = bundle.pi.levels[1]
    n_obj, n_arr = len(total.objects), len(total.arrows)

    def obj(x: int, g: int) -> int:
        return x * m + g

    def arr(k: int, g: int) -> int:
        return k * m + g

    comp = {}
    for k in range(n_arr):
        for g in range(m):
            end = group.mul(g, pi1[k])
            for k2 in range(n_arr):
                if total.src[k2] == total.tgt[k]:
                    comp[(arr(k, g), arr(k2, end))] = arr(total.comp[(k, k2)], g)
    strict = FiniteGroupoid(
        name=f"{bundle.name}×E{group.name}",
        objects=tuple(f"({x},{group.elements[g]})" for x in total.objects for g in range(m)),
        arrows=tuple(f"({a},{group.elements[g]})" for a in total.arrows for g in range(m)),
        src=tuple(obj(total.src[k], g) for k in range(n_arr) for g in range(m)),
        tgt=tuple(obj(total.tgt[k], group.mul(g, pi1[k])) for k in range(n_arr) for g in range(m)),
        comp=comp,
        inv=tuple(
            arr(total.inv[k], group.mul(g, pi1[k])) for k in range(n_arr) for g in range(m)
        ),
        unit=tuple(arr(total.unit[x], g) for x in range(n_obj) for g in range(m)),
    )
    action = StrictAction(
        name=f"λ({bundle.name})",
        groupoid=strict,
        group=group,
        phi_objects=tuple(
            tuple(obj(x, group.mul(h, g)) for x in range(n_obj) for g in range(m)) for h in range(m)
        ),
        phi_arrows=tuple(
            tuple(arr(k, group.mul(h, g)) for k in range(n_arr) for g in range(m)) for h in range(m)
        ),
    )

    fib, f_objects, f_arrows = fiber_groupoid(bundle, bundle.base_vertex)
    e = group.identity
    comparison = Functor(
        name="f",
        source=fib,
        target=strict,
        object_map=tuple(obj(x, e) for x in f_objects),
        arrow_map=tuple(arr(a, e) for a in f_arrows),
    )
    f = functor_to_map(comparison, N)
    logger.info(f"Strictified {bundle.name}: {len(strict.objects)} objects, {len(strict.arrows)} arrows")
    return strict, action, f
