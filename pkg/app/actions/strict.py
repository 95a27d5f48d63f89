"""
Strict actions of groups and crossed modules on finite groupoids.

``phi_objects[g][x]`` and ``phi_arrows[g][a]`` give the functor Φ(g); the
induced right action is ``x·g = Φ(g⁻¹)(x)``. A crossed-module action also
carries ``theta[h][x]``, an arrow ``x → x·∂h`` of the groupoid.
"""

from itertools import product as cartesian
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, model_validator

from app.errors import NotAStrictAction, ToolkitError
from app.groupoids.groupoid_bridge import FiniteGroupoid, Functor
from app.groupoids.groups import FiniteGroup
from app.groupoids.two_group import CrossedModule


class StrictAction(BaseModel):
    """Φ: G → Aut(𝒳) strictly, optionally with Θ for a crossed module."""

    model_config = ConfigDict(frozen=True)

    name: str = "A"
    groupoid: FiniteGroupoid
    group: Optional[FiniteGroup] = None
    crossed_module: Optional[CrossedModule] = None
    phi_objects: tuple[tuple[int, ...], ...]
    phi_arrows: tuple[tuple[int, ...], ...]
    theta: Optional[tuple[tuple[int, ...], ...]] = None

    @model_validator(mode="after")
    def _validate_action(self) -> "StrictAction":
        validate_action(self)
        return self

    @property
    def G(self) -> FiniteGroup:
        return self.crossed_module.G if self.crossed_module is not None else self.group

    @property
    def is_two_group(self) -> bool:
        return self.crossed_module is not None

    def functor(self, g: int) -> Functor:
        return Functor(
            name=f"Φ({self.G.elements[g]})",
            source=self.groupoid,
            target=self.groupoid,
            object_map=self.phi_objects[g],
            arrow_map=self.phi_arrows[g],
        )

    def right_object(self, x: int, g: int) -> int:
        return self.phi_objects[self.G.inv(g)][x]

    def right_arrow(self, a: int, g: int) -> int:
        return self.phi_arrows[self.G.inv(g)][a]

    def theta_at(self, h: int, x: int) -> int:
        """``Θ(h)_x``; unit arrows when no Θ table is given."""
        if self.theta is None:
            return self.groupoid.unit[x]
        return self.theta[h][x]


def validate_action(A: StrictAction) -> None:
    """Raises NotAStrictAction naming the first violated law."""
    if (A.group is None) == (A.crossed_module is None):
        raise NotAStrictAction(f"{A.name} needs exactly one of a group or a crossed module")
    X, G = A.groupoid, A.G
    n_obj, n_arr = len(X.objects), len(X.arrows)
    if len(A.phi_objects) != G.order or len(A.phi_arrows) != G.order:
        raise NotAStrictAction(f"{A.name} does not define Φ on every element of {G.name}")
    for g in range(G.order):
        try:
            A.functor(g)
        except ToolkitError as e:
            raise NotAStrictAction(
                f"Φ({G.elements[g]}) is not a functor: {e.message}", witness={"g": G.elements[g]}
            )
    if A.phi_objects[G.identity] != tuple(range(n_obj)) or A.phi_arrows[G.identity] != tuple(range(n_arr)):
        raise NotAStrictAction(f"Φ(e) is not the identity in {A.name}")
    for g1, g2 in cartesian(range(G.order), repeat=2):
        g = G.mul(g1, g2)
        if any(A.phi_objects[g][x] != A.phi_objects[g1][A.phi_objects[g2][x]] for x in range(n_obj)) or any(
            A.phi_arrows[g][a] != A.phi_arrows[g1][A.phi_arrows[g2][a]] for a in range(n_arr)
        ):
            raise NotAStrictAction(
                f"Φ({G.elements[g1]})∘Φ({G.elements[g2]}) differs from Φ({G.elements[g]})",
                witness={"g1": G.elements[g1], "g2": G.elements[g2]},
            )
    if A.crossed_module is not None:
        _validate_theta(A)
    elif A.theta is not None:
        raise NotAStrictAction(f"{A.name} carries Θ data without a crossed module")


def _validate_theta(A: StrictAction) -> None:
    XM, X = A.crossed_module, A.groupoid
    H, G = XM.H, XM.G
    n_obj = len(X.objects)
    if A.theta is not None and (len(A.theta) != H.order or any(len(row) != n_obj for row in A.theta)):
        raise NotAStrictAction(f"Θ of {A.name} is not defined on every (h, x)")
    for h, x in cartesian(range(H.order), range(n_obj)):
        t = A.theta_at(h, x)
        if X.src[t] != x or X.tgt[t] != A.right_object(x, XM.bnd[h]):
            raise NotAStrictAction(
                f"Θ({H.elements[h]}) at {X.objects[x]} does not go to x·∂h",
                witness={"h": H.elements[h], "x": X.objects[x]},
            )
    for x in range(n_obj):
        if A.theta_at(H.identity, x) != X.unit[x]:
            raise NotAStrictAction(f"Θ(e) is not the unit at {X.objects[x]}", witness={"x": X.objects[x]})
    for h in range(H.order):
        d = XM.bnd[h]
        for a in range(len(X.arrows)):
            x, y = X.src[a], X.tgt[a]
            if X.comp[(A.theta_at(h, x), A.right_arrow(a, d))] != X.comp[(a, A.theta_at(h, y))]:
                raise NotAStrictAction(
                    f"Θ({H.elements[h]}) is not natural at {X.arrows[a]}",
                    witness={"h": H.elements[h], "arrow": X.arrows[a]},
                )
    for h1, h2, x in cartesian(range(H.order), range(H.order), range(n_obj)):
        moved = A.right_object(x, XM.bnd[h1])
        if A.theta_at(H.mul(h1, h2), x) != X.comp[(A.theta_at(h1, x), A.theta_at(h2, moved))]:
            raise NotAStrictAction(
                f"Θ is not multiplicative at ({H.elements[h1]}, {H.elements[h2]})",
                witness={"h": H.elements[h1], "h'": H.elements[h2], "x": X.objects[x]},
            )
    for g, h, x in cartesian(range(G.order), range(H.order), range(n_obj)):
        twisted = XM.act[G.inv(g)][h]
        if A.theta_at(twisted, A.right_object(x, g)) != A.right_arrow(A.theta_at(h, x), g):
            raise NotAStrictAction(
                f"Θ is not equivariant for {G.elements[g]}",
                witness={"g": G.elements[g], "h": H.elements[h], "x": X.objects[x]},
            )


def action_from_object_permutations(
    groupoid: FiniteGroupoid,
    group: FiniteGroup,
    permutations: Sequence[Sequence[int]],
    name: str = "A",
) -> StrictAction:
    """
    Action of a group on a groupoid with at most one arrow between any two
    objects (discrete or pair groupoids), given by object permutations.
    """
    lookup = {(groupoid.src[a], groupoid.tgt[a]): a for a in range(len(groupoid.arrows))}
    if len(lookup) != len(groupoid.arrows):
        raise NotAStrictAction(f"{groupoid.name} has parallel arrows; give arrow tables explicitly")
    phi_arrows = tuple(
        tuple(lookup[(perm[groupoid.src[a]], perm[groupoid.tgt[a]])] for a in range(len(groupoid.arrows)))
        for perm in permutations
    )
    return StrictAction(
        name=name,
        groupoid=groupoid,
        group=group,
        phi_objects=tuple(tuple(p) for p in permutations),
        phi_arrows=phi_arrows,
    )


def trivial_group_action(groupoid: FiniteGroupoid, group: FiniteGroup, name: str = "Triv") -> StrictAction:
    ident_o = tuple(range(len(groupoid.objects)))
    ident_a = tuple(range(len(groupoid.arrows)))
    return StrictAction(
        name=name,
        groupoid=groupoid,
        group=group,
        phi_objects=(ident_o,) * group.order,
        phi_arrows=(ident_a,) * group.order,
    )


def trivial_crossed_module_action(
    groupoid: FiniteGroupoid,
    XM: CrossedModule,
    theta: Optional[Sequence[Sequence[int]]] = None,
    name: str = "Triv2",
) -> StrictAction:
    """G acts trivially; Θ defaults to unit arrows."""
    ident_o = tuple(range(len(groupoid.objects)))
    ident_a = tuple(range(len(groupoid.arrows)))
    return StrictAction(
        name=name,
        groupoid=groupoid,
        crossed_module=XM,
        phi_objects=(ident_o,) * XM.G.order,
        phi_arrows=(ident_a,) * XM.G.order,
        theta=tuple(tuple(row) for row in theta) if theta is not None else None,
    )
