"""
Named fixtures and seeded random instances.

Fixtures:
    C2       cyclic group of order 2 as a one-object groupoid
    Pair2    two objects, one arrow between any two
    XM0      C2 → 1
    XM1      1 → C2
    XM2      C2 → C4, the inclusion of {0, 2} with trivial action
    SwapAct  C2 swapping the objects of a discrete groupoid on p, q
"""

import logging
import random
from functools import cache
from typing import Callable, Optional

from app.actions.strict import (
    StrictAction,
    action_from_object_permutations,
    trivial_crossed_module_action,
    trivial_group_action,
)
from app.groupoids.groupoid_bridge import (
    FiniteGroupoid,
    cyclic_groupoid,
    discrete_groupoid,
    disjoint_union,
    pair_groupoid,
    transitive_groupoid,
)
from app.groupoids.groups import (
    FiniteGroup,
    cyclic_group,
    direct_product,
    normal_subgroups,
    subgroup,
    symmetric_group_3,
    trivial_group,
)
from app.groupoids.two_group import CrossedModule, classifying_sizes, conjugation_action, trivial_action
from settings import compute_settings

logger = logging.getLogger(__name__)


def c2() -> FiniteGroupoid:
    return cyclic_groupoid(2)


def pair2() -> FiniteGroupoid:
    return pair_groupoid(("p", "q"))


def xm0() -> CrossedModule:
    H, G = cyclic_group(2), trivial_group()
    return CrossedModule(name="XM0", H=H, G=G, bnd=(0, 0), act=trivial_action(G, H))


def xm1() -> CrossedModule:
    H, G = trivial_group(), cyclic_group(2)
    return CrossedModule(name="XM1", H=H, G=G, bnd=(0,), act=trivial_action(G, H))


def xm2() -> CrossedModule:
    H, G = cyclic_group(2), cyclic_group(4)
    return CrossedModule(name="XM2", H=H, G=G, bnd=(0, 2), act=trivial_action(G, H))


def swap_action() -> StrictAction:
    return action_from_object_permutations(
        discrete_groupoid(["p", "q"]), cyclic_group(2), [(0, 1), (1, 0)], name="SwapAct"
    )


def xm0_on_c2() -> StrictAction:
    """XM0 acting on C2 with Θ of the generator the nontrivial arrow."""
    return trivial_crossed_module_action(c2(), xm0(), theta=[(0,), (1,)], name="XM0⟳C2")


FIXTURES: dict[str, Callable[[], object]] = {
    "C2": c2,
    "Pair2": pair2,
    "XM0": xm0,
    "XM1": xm1,
    "XM2": xm2,
    "SwapAct": swap_action,
}


def fixture(name: str):
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}")


# -- random instances ----------------------------------------------------------------

_SMALL_GROUPS: list[Callable[[], FiniteGroup]] = [
    trivial_group,
    lambda: cyclic_group(2),
    lambda: cyclic_group(3),
    lambda: cyclic_group(4),
    symmetric_group_3,
]

_CROSSED_MODULE_GROUPS: list[Callable[[], FiniteGroup]] = [
    lambda: cyclic_group(2),
    lambda: cyclic_group(3),
    lambda: cyclic_group(4),
    lambda: cyclic_group(6),
    lambda: cyclic_group(8),
    lambda: direct_product(cyclic_group(2), cyclic_group(2)),
    lambda: direct_product(cyclic_group(2), cyclic_group(4)),
    symmetric_group_3,
]

_TRIVIAL_BOUNDARY_BASES: list[Callable[[], FiniteGroup]] = [
    trivial_group,
    lambda: cyclic_group(2),
    lambda: cyclic_group(3),
]


def make_rng(seed: Optional[int] = None) -> random.Random:
    return random.Random(compute_settings.default_seed if seed is None else seed)


def random_groupoid(rng: random.Random, max_objects: int = 4, max_arrows: int = 12) -> FiniteGroupoid:
    """Disjoint union of transitive groupoids with small vertex groups."""
    names = iter("abcdefghijklmnop")
    out: Optional[FiniteGroupoid] = None
    objects = arrows = 0
    while objects < max_objects:
        k = rng.randint(1, max_objects - objects)
        G = rng.choice(_SMALL_GROUPS)()
        if arrows + k * k * G.order > max_arrows:
            if out is not None:
                break
            G = trivial_group()
            k = 1
        part = transitive_groupoid([next(names) for _ in range(k)], G)
        out = part if out is None else disjoint_union(out, part)
        objects += k
        arrows += k * k * G.order
        if rng.random() < 0.4:
            break
    return out.model_copy(update={"name": f"R{objects}.{arrows}"})


Recipe = tuple[str, int, tuple[int, ...]]


@cache
def _crossed_module_recipes(max_order: int, max_cells: Optional[int], N: int) -> tuple[Recipe, ...]:
    """Normal-subgroup inclusions and trivial-boundary modules whose level ``N`` fits ``max_cells``."""

    def fits(g_order: int, h_order: int) -> bool:
        if g_order > max_order or h_order > max_order:
            return False
        return max_cells is None or classifying_sizes(g_order, h_order, N)[-1] <= max_cells

    recipes: list[Recipe] = []
    for k, build in enumerate(_CROSSED_MODULE_GROUPS):
        G = build()
        if G.order > max_order:
            continue
        recipes.extend(("inclusion", k, members) for members in normal_subgroups(G) if fits(G.order, len(members)))
    for h in (2, 3, 4):
        for k, build in enumerate(_TRIVIAL_BOUNDARY_BASES):
            if fits(build().order, h):
                recipes.append(("trivial_boundary", k, (h,)))
    return tuple(recipes)


def _build_crossed_module(recipe: Recipe) -> CrossedModule:
    kind, k, data = recipe
    if kind == "inclusion":
        G = _CROSSED_MODULE_GROUPS[k]()
        H, _ = subgroup(G, data)
        return CrossedModule(name=f"{H.name}→{G.name}", H=H, G=G, bnd=data, act=conjugation_action(G, data))
    H, base = cyclic_group(data[0]), _TRIVIAL_BOUNDARY_BASES[k]()
    return CrossedModule(
        name=f"{H.name}→{base.name}",
        H=H,
        G=base,
        bnd=(base.identity,) * H.order,
        act=trivial_action(base, H),
    )


def crossed_module_choices(max_order: int = 8, max_cells: Optional[int] = None, N: int = 4) -> list[CrossedModule]:
    """Every crossed module ``random_crossed_module`` can draw with these bounds."""
    return [_build_crossed_module(r) for r in _crossed_module_recipes(max_order, max_cells, N)]


def random_crossed_module(
    rng: random.Random, max_order: int = 8, max_cells: Optional[int] = None, N: int = 4
) -> CrossedModule:
    """
    A normal-subgroup inclusion with conjugation, or a cyclic group with
    trivial boundary, drawn uniformly among those with ``|G|, |H| <= max_order``.

    ``max_cells`` bounds level ``N`` of the classifying 2-group, which has
    ``|G|^N·|H|^(N(N-1)/2)`` cells.
    """
    recipes = _crossed_module_recipes(max_order, max_cells, N)
    if not recipes:
        raise ValueError(f"no crossed module with order <= {max_order} fits {max_cells} cells at level {N}")
    return _build_crossed_module(rng.choice(recipes))


def random_strict_action(rng: random.Random) -> StrictAction:
    """
    A group acting by left translation on regular orbits plus fixed points
    (discrete or pair groupoid), or trivially on a random groupoid.
    """
    G = cyclic_group(rng.choice((2, 2, 3)))
    if rng.random() < 0.3:
        return trivial_group_action(random_groupoid(rng, max_arrows=9), G, name=f"Triv({G.name})")
    regular = rng.randint(1, max(1, 4 // G.order))
    fixed = rng.randint(0, 4 - regular * G.order)
    k = regular * G.order + fixed
    labels = [f"x{i}" for i in range(k)]
    X = discrete_groupoid(labels) if rng.random() < 0.5 else pair_groupoid(labels)
    permutations = []
    for g in range(G.order):
        perm = [G.mul(g, i % G.order) + (i // G.order) * G.order for i in range(regular * G.order)]
        perm += list(range(regular * G.order, k))
        permutations.append(perm)
    return action_from_object_permutations(X, G, permutations, name=f"Reg{regular}+{fixed}({G.name})")
