"""
Fixed points and quotients of actions: invariant objects of a fibration and
the orbit groupoid of a free strict action.
"""

import logging

from app.actions.bundles import FibrationBundle, action_groupoid, fiber_groupoid
from app.actions.strict import StrictAction
from app.errors import ActionNotFree, InvariantSaturationError, NotAStrictAction
from app.groupoids.groupoid_bridge import FiniteGroupoid, Functor, functor_to_map
from app.simplicial.core import SimplicialMap
from app.utilities.union_find import UnionFind

logger = logging.getLogger(__name__)


def invariant_objects(bundle: FibrationBundle, y0: int = 0) -> list[int]:
    """
    Vertices x of the fiber over ``y0`` such that every base loop at ``y0``
    lifts to a loop at x.

    Raises:
        InvariantSaturationError: a fiber arrow leaves the invariant set
    """
    K, G, pi = bundle.K, bundle.G, bundle.pi
    loops = [g for g in G.cells(1) if G.faces[1][0][g] == y0 and G.faces[1][1][g] == y0]
    fib, f_objects, f_arrows = fiber_groupoid(bundle, y0)
    lifted: dict[int, set[int]] = {x: set() for x in f_objects}
    for k in K.cells(1):
        x = K.faces[1][1][k]
        if x in lifted and K.faces[1][0][k] == x:
            lifted[x].add(pi.levels[1][k])
    invariant = [x for x in f_objects if all(g in lifted[x] for g in loops)]
    members = set(invariant)
    for a in f_arrows:
        source, target = K.faces[1][1][a], K.faces[1][0][a]
        if source in members and target not in members:
            raise InvariantSaturationError(
                f"arrow {K.label(1, a)} leaves the invariant objects of {bundle.name}",
                witness={"arrow": str(K.label(1, a)), "source": str(K.label(0, source))},
            )
    logger.info(f"{bundle.name}: {len(invariant)} of {len(f_objects)} fiber objects are invariant")
    return invariant


def stabilizer(A: StrictAction, x: int) -> list[int]:
    return [g for g in range(A.G.order) if A.right_object(x, g) == x]


def free_quotient(A: StrictAction, N: int = 3) -> tuple[FiniteGroupoid, SimplicialMap]:
    """
    The orbit groupoid ``𝒳/G`` and the projection onto its nerve from the
    nerve of the action groupoid.

    Raises:
        ActionNotFree: some object has a nontrivial stabilizer
    """
    if A.group is None:
        raise NotAStrictAction(f"{A.name} is a crossed-module action; quotients need a group action")
    X, G = A.groupoid, A.group
    for x in range(len(X.objects)):
        stab = stabilizer(A, x)
        if len(stab) > 1:
            raise ActionNotFree(
                f"{X.objects[x]} is fixed by {len(stab) - 1} nontrivial elements of {G.name}",
                witness={"object": X.objects[x], "stabilizer": [G.elements[g] for g in stab]},
            )

    object_orbits = UnionFind(len(X.objects))
    arrow_orbits = UnionFind(len(X.arrows))
    for g in range(G.order):
        for x in range(len(X.objects)):
            object_orbits.union(x, A.right_object(x, g))
        for a in range(len(X.arrows)):
            arrow_orbits.union(a, A.right_arrow(a, g))
    o_reps, o_class = object_orbits.classes()
    a_reps, a_class = arrow_orbits.classes()

    comp = {}
    for a in range(len(X.arrows)):
        for b in range(len(X.arrows)):
            if X.src[b] == X.tgt[a]:
                comp[(a_class[a], a_class[b])] = a_class[X.comp[(a, b)]]
    Q = FiniteGroupoid(
        name=f"{X.name}/{G.name}",
        objects=tuple(X.objects[x] for x in o_reps),
        arrows=tuple(X.arrows[a] for a in a_reps),
        src=tuple(o_class[X.src[a]] for a in a_reps),
        tgt=tuple(o_class[X.tgt[a]] for a in a_reps),
        comp=comp,
        inv=tuple(a_class[X.inv[a]] for a in a_reps),
        unit=tuple(a_class[X.unit[x]] for x in o_reps),
    )
    K, _, _ = action_groupoid(A)
    m = G.order
    projection = Functor(
        name="q",
        source=K,
        target=Q,
        object_map=tuple(o_class),
        arrow_map=tuple(a_class[k // m] for k in range(len(K.arrows))),
    )
    logger.info(f"Quotient of {A.name}: {len(Q.objects)} objects, {len(Q.arrows)} arrows")
    return Q, functor_to_map(projection, N)
