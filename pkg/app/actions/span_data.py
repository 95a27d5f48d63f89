"""
Recovering action data from a Kan fibration.

Over each base 1-cell ``g`` the 1-cells of K form the objects of a span
groupoid ``Y_g`` whose arrows are squares over the constant cylinder on
``g``; the legs are the two vertical edges. Over each base 2-cell a
transport table records the fiber arrow produced by two relative horn lifts.
"""

import logging

from pydantic import BaseModel, ConfigDict, model_validator

from app.actions.bundles import FibrationBundle, fiber_groupoid
from app.errors import CoherenceFailure, DepthExceedsTruncation, ToolkitError
from app.groupoids.groupoid_bridge import FiniteGroupoid, Functor, groupoid_from_composition
from app.simplicial.kan_verify import fill_relative_horn

logger = logging.getLogger(__name__)


class ActionSpan(BaseModel):
    """``𝒳 ← Y_g → 𝒳`` for one base 1-cell."""

    model_config = ConfigDict(frozen=True)

    g: int
    groupoid: FiniteGroupoid
    cells: tuple[int, ...]
    left: Functor
    right: Functor

    def right_of_left(self, x: int) -> list[int]:
        """Objects reached from fiber object ``x`` through the span."""
        return sorted(
            {self.right.object_map[y] for y in range(len(self.cells)) if self.left.object_map[y] == x}
        )


class ActionSpanData(BaseModel):
    """Spans per base 1-cell and transport tables per base 2-cell."""

    model_config = ConfigDict(frozen=True)

    fiber: FiniteGroupoid
    fiber_objects: tuple[int, ...]
    fiber_arrows: tuple[int, ...]
    spans: dict[int, ActionSpan]
    transport: dict[int, dict[tuple[int, int, int], int]]

    @model_validator(mode="after")
    def _validate_transport(self) -> "ActionSpanData":
        arrows = set(self.fiber_arrows)
        for sigma, table in self.transport.items():
            for key, z in table.items():
                if z not in arrows:
                    raise CoherenceFailure(
                        f"transport over 2-cell {sigma} leaves the fiber",
                        witness={"cell": sigma, "key": list(key)},
                    )
        return self


def _square(bundle: FibrationBundle, g: int, y: int, a: int, b: int) -> tuple[int, int]:
    """Lift the square with bottom ``y``, left edge ``a`` and right edge ``b``.

    Returns ``(top, diagonal)``.
    """
    K, G, pi = bundle.K, bundle.G, bundle.pi
    lower = fill_relative_horn(pi, 2, 1, (b, y), G.degens[1][1][g])
    diagonal = K.faces[2][1][lower.cell]
    upper = fill_relative_horn(pi, 2, 0, (diagonal, a), G.degens[1][0][g])
    return K.faces[2][0][upper.cell], diagonal


def _span(bundle: FibrationBundle, g: int, fiber: FiniteGroupoid, f_objects, f_arrows) -> ActionSpan:
    K = bundle.K
    o_pos = {x: k for k, x in enumerate(f_objects)}
    a_pos = {a: k for k, a in enumerate(f_arrows)}
    objects = [y for y in K.cells(1) if bundle.pi.levels[1][y] == g]
    y_pos = {y: k for k, y in enumerate(objects)}
    by_src: dict[int, list[int]] = {}
    for a in f_arrows:
        by_src.setdefault(K.faces[1][1][a], []).append(a)

    arrows: list[tuple[int, int, int]] = []
    ends: list[int] = []
    for y in objects:
        for a in by_src.get(K.faces[1][1][y], ()):
            for b in by_src.get(K.faces[1][0][y], ()):
                top, _ = _square(bundle, g, y, a, b)
                arrows.append((y, a, b))
                ends.append(top)
    index = {c: k for k, c in enumerate(arrows)}
    comp = {}
    for k, (y, a, b) in enumerate(arrows):
        top = ends[k]
        for a2 in by_src.get(K.faces[1][1][top], ()):
            for b2 in by_src.get(K.faces[1][0][top], ()):
                aa = f_arrows[fiber.comp[(a_pos[a], a_pos[a2])]]
                bb = f_arrows[fiber.comp[(a_pos[b], a_pos[b2])]]
                comp[(k, index[(top, a2, b2)])] = index[(y, aa, bb)]
    Y = groupoid_from_composition(
        f"Y_{g}",
        [str(K.label(1, y)) for y in objects],
        [f"{K.label(1, y)}|{fiber.arrows[a_pos[a]]}|{fiber.arrows[a_pos[b]]}" for y, a, b in arrows],
        [y_pos[y] for y, _, _ in arrows],
        [y_pos[t] for t in ends],
        comp,
    )
    left = Functor(
        name="u_l",
        source=Y,
        target=fiber,
        object_map=tuple(o_pos[K.faces[1][1][y]] for y in objects),
        arrow_map=tuple(a_pos[a] for _, a, _ in arrows),
    )
    right = Functor(
        name="u_r",
        source=Y,
        target=fiber,
        object_map=tuple(o_pos[K.faces[1][0][y]] for y in objects),
        arrow_map=tuple(a_pos[b] for _, _, b in arrows),
    )
    return ActionSpan(g=g, groupoid=Y, cells=tuple(objects), left=left, right=right)


def _transport(bundle: FibrationBundle, sigma: int) -> dict[tuple[int, int, int], int]:
    """
    ``φ(y′₀₂, y₀₁, y₁₂) = z₁₂``: lift ``(y₀₁, y₁₂)`` over σ to get ``y₀₂``,
    then lift ``(y′₀₂, y₀₂)`` over ``s₁(g₀₂)`` and read off its 0-th face.
    """
    K, G, pi = bundle.K, bundle.G, bundle.pi
    g12, g02, g01 = (G.faces[2][i][sigma] for i in range(3))
    over_02 = [y for y in K.cells(1) if pi.levels[1][y] == g02]
    out = {}
    for y01 in K.cells(1):
        if pi.levels[1][y01] != g01:
            continue
        for y12 in K.single_face_index(1, 1).get(K.faces[1][0][y01], ()):
            if pi.levels[1][y12] != g12:
                continue
            lifted = fill_relative_horn(pi, 2, 1, (y12, y01), sigma)
            y02 = K.faces[2][1][lifted.cell]
            for y02_prime in over_02:
                if K.faces[1][1][y02_prime] != K.faces[1][1][y02]:
                    continue
                z = fill_relative_horn(pi, 2, 0, (y02_prime, y02), G.degens[1][1][g02])
                out[(y02_prime, y01, y12)] = K.faces[2][0][z.cell]
    return out


def lambda_extract(bundle: FibrationBundle, y0: int = 0) -> ActionSpanData:
    """
    Spans over every base 1-cell and transport over every base 2-cell.

    Raises:
        DepthExceedsTruncation: K or the base stops below level 2
    """
    if bundle.K.N < 2 or bundle.G.N < 2:
        raise DepthExceedsTruncation(
            f"{bundle.name} must reach level 2 to extract spans",
            witness={"needed": 2, "available": min(bundle.K.N, bundle.G.N)},
        )
    fiber, f_objects, f_arrows = fiber_groupoid(bundle, y0)
    try:
        spans = {g: _span(bundle, g, fiber, f_objects, f_arrows) for g in bundle.G.cells(1)}
        transport = {sigma: _transport(bundle, sigma) for sigma in bundle.G.cells(2)}
    except ToolkitError as e:
        raise CoherenceFailure(f"{bundle.name} does not yield span data: {e.message}", witness=e.witness)
    logger.info(f"Extracted {len(spans)} spans and {len(transport)} transport tables from {bundle.name}")
    return ActionSpanData(
        fiber=fiber,
        fiber_objects=tuple(f_objects),
        fiber_arrows=tuple(f_arrows),
        spans=spans,
        transport=transport,
    )
