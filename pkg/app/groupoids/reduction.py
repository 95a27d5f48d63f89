"""
2-isotropy and the reduction of a 2-isotropy-free 2-groupoid to a groupoid.

Two 1-cells are identified when some 2-cell has them as its last two faces
and a degenerate 0-th face; classes are numbered by least representative.
"""

import logging
from typing import Optional

from app.errors import NotA2Groupoid, Not2IsotropyFree, WellDefinednessFailure
from app.groupoids.groupoid_bridge import FiniteGroupoid, groupoid_from_composition, nerve, nerve_strings
from app.simplicial.core import SimplicialMap, TruncatedSimplicialSet, apply_operator
from app.simplicial.kan_verify import (
    CheckReport,
    cap_witnesses,
    classify_n_groupoid,
    horn_fillers,
    show_cell,
)
from app.utilities.union_find import UnionFind

logger = logging.getLogger(__name__)


def two_isotropy_set(Z: TruncatedSimplicialSet, z: int) -> list[int]:
    """2-cells all of whose faces are the degenerate edge at ``z``."""
    u = Z.degens[0][0][z]
    return list(Z.boundary_index(2).get((u, u, u), ()))


def is_2_isotropy_free(Z: TruncatedSimplicialSet) -> CheckReport:
    witnesses = []
    for z in Z.cells(0):
        cells = two_isotropy_set(Z, z)
        if len(cells) != 1:
            witnesses.append({"vertex": show_cell(Z, 0, z), "isotropy": [show_cell(Z, 2, c) for c in cells]})
    return CheckReport(
        subject=Z.name,
        condition="2-isotropy free",
        verdict="fails" if witnesses else "holds",
        witnesses=cap_witnesses(witnesses),
        depth=2,
    )


def _degenerate_rigidity(Z: TruncatedSimplicialSet) -> CheckReport:
    """Every 2-cell with the boundary of ``s_j(g)`` is ``s_j(g)``."""
    index = Z.boundary_index(2)
    witnesses = []
    for g in Z.cells(1):
        for j in range(2):
            s = Z.degens[1][j][g]
            others = [c for c in index[Z.face_tuple(2, s)] if c != s]
            if others:
                witnesses.append(
                    {"edge": show_cell(Z, 1, g), "degeneracy": j, "others": [show_cell(Z, 2, c) for c in others]}
                )
    return CheckReport(
        subject=Z.name,
        condition="degenerate 2-cells are rigid",
        verdict="fails" if witnesses else "holds",
        witnesses=cap_witnesses(witnesses),
        depth=2,
    )


def _boundary_injective(Z: TruncatedSimplicialSet) -> CheckReport:
    witnesses = [
        {"boundary": [show_cell(Z, 1, y) for y in faces], "cells": [show_cell(Z, 2, c) for c in cells]}
        for faces, cells in Z.boundary_index(2).items()
        if len(cells) > 1
    ]
    return CheckReport(
        subject=Z.name,
        condition="∂ injective on 2-cells",
        verdict="fails" if witnesses else "holds",
        witnesses=cap_witnesses(witnesses),
        depth=2,
    )


def check_isotropy_consequences(Z: TruncatedSimplicialSet) -> CheckReport:
    """
    Checks rigidity of degenerate 2-cells and injectivity of the 2-cell
    boundary directly, and whether they agree with the isotropy hypothesis.

    The verdict fails only when Z is 2-isotropy free but a consequence fails;
    the individual outcomes are in ``details``.
    """
    free = is_2_isotropy_free(Z)
    rigid = _degenerate_rigidity(Z)
    injective = _boundary_injective(Z)
    details = [free, rigid, injective]
    witnesses = []
    if free.holds:
        witnesses = [
            {"condition": r.condition, "witness": w} for r in (rigid, injective) for w in r.witnesses
        ]
    notes = [f"{r.condition}: {r.verdict}" for r in details]
    if not free.holds:
        notes.append("hypothesis does not hold; consequences are informational")
    report = CheckReport(
        subject=Z.name,
        condition="2-isotropy consequences",
        verdict="fails" if witnesses else "holds",
        witnesses=cap_witnesses(witnesses),
        depth=2,
        notes=notes,
        details=details,
    )
    logger.info(f"Isotropy consequences on {Z.name}: {report.verdict} ({'; '.join(notes)})")
    return report


def edge_classes(Z: TruncatedSimplicialSet) -> UnionFind:
    """``z ∼ z′`` when a 2-cell has ``d₂ = z``, ``d₁ = z′`` and degenerate ``d₀``."""
    degenerate_edges = {Z.degens[0][0][v] for v in Z.cells(0)}
    classes = UnionFind(Z.sizes[1])
    for c in Z.cells(2):
        if Z.faces[2][0][c] in degenerate_edges:
            classes.union(Z.faces[2][2][c], Z.faces[2][1][c])
    return classes


def reduce_to_1(Z: TruncatedSimplicialSet, name: Optional[str] = None) -> tuple[FiniteGroupoid, SimplicialMap]:
    """
    The groupoid ``Z₁/∼ ⇉ Z₀`` and the projection ``Z → nerve(Z̃)``.

    Composition of classes is ``d₁`` of any Λ[2,1] filler; every filler of
    every composable pair is checked to land in the same class.

    Raises:
        NotA2Groupoid: Z fails the 2-groupoid classification
        Not2IsotropyFree: some vertex has more than one all-degenerate 2-cell
        WellDefinednessFailure: composition depends on the representatives
    """
    shape = classify_n_groupoid(Z, 2)
    if shape.verdict == "fails":
        raise NotA2Groupoid(f"{Z.name} is not a 2-groupoid", witness=shape.witnesses)
    free = is_2_isotropy_free(Z)
    if not free.holds:
        raise Not2IsotropyFree(f"{Z.name} is not 2-isotropy free", witness=free.witnesses)

    reps, class_of = edge_classes(Z).classes()
    comp: dict[tuple[int, int], int] = {}
    for a in Z.cells(1):
        for b in Z.single_face_index(1, 1).get(Z.faces[1][0][a], ()):
            key = (class_of[a], class_of[b])
            for cell in horn_fillers(Z, 2, 1, (b, a)):
                value = class_of[Z.faces[2][1][cell]]
                if comp.setdefault(key, value) != value:
                    raise WellDefinednessFailure(
                        f"composition of classes [{show_cell(Z, 1, a)}]·[{show_cell(Z, 1, b)}] is not well defined",
                        witness={"first": show_cell(Z, 1, a), "second": show_cell(Z, 1, b)},
                    )
    arrow_names = [str(Z.label(1, r)) for r in reps]
    if len(set(arrow_names)) != len(arrow_names):
        arrow_names = [f"[{r}]" for r in reps]
    reduced = groupoid_from_composition(
        name or f"{Z.name}~",
        [str(v) for v in Z.names(0)],
        arrow_names,
        [Z.faces[1][1][r] for r in reps],
        [Z.faces[1][0][r] for r in reps],
        comp,
    )

    strings = nerve_strings(reduced, Z.N)
    index = [{s: k for k, s in enumerate(level)} for level in strings]
    levels = [tuple(index[0][(z,)] for z in Z.cells(0))]
    for n in range(1, Z.N + 1):
        levels.append(
            tuple(
                index[n][tuple(class_of[apply_operator(Z, n, x, (i, i + 1))] for i in range(n))]
                for x in Z.cells(n)
            )
        )
    f = SimplicialMap(name="f", source=Z, target=nerve(reduced, Z.N), levels=tuple(levels))
    logger.info(f"Reduced {Z.name} to {reduced.describe()}")
    return reduced, f
