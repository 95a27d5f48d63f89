"""
Kan conditions, n-groupoid classification, fibrations, hypercovers and
equivalences for finite truncated complexes.

In the finite setting surjective submersions are surjections, diffeomorphisms
are bijections, and the étale / properness conditions hold vacuously; reports
say so explicitly. Checks that would need levels above the truncation are
reported as ``partial``.
"""

import logging
from typing import Any, Iterable, Literal, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import DepthExceedsTruncation, InvalidIndex, NoFiller
from app.simplicial.core import (
    SimplicialMap,
    TruncatedSimplicialSet,
    compose,
    fiber_product,
)
from app.simplicial.hom_search import (
    HornTable,
    HornTuple,
    boundary_restriction,
    build_cylinder,
    horn_restriction,
)
from settings import compute_settings

logger = logging.getLogger(__name__)

Verdict = Literal["holds", "fails", "partial"]
KanMode = Literal["fill", "unique", "etale"]


class CheckReport(BaseModel):
    """Outcome of a verification with counterexamples when it fails."""

    model_config = ConfigDict(frozen=True)

    subject: str
    condition: str
    verdict: Verdict
    witnesses: list[Any] = Field(default_factory=list)
    depth: int = 0
    notes: list[str] = Field(default_factory=list)
    details: list["CheckReport"] = Field(default_factory=list)

    @model_validator(mode="after")
    def _fails_has_witness(self) -> "CheckReport":
        if self.verdict == "fails" and not self.witnesses:
            raise ValueError(f"failing report for {self.condition} carries no witness")
        return self

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


class Filler(BaseModel):
    """A chosen horn filler; ``unique`` is False when others exist."""

    model_config = ConfigDict(frozen=True)

    cell: int
    unique: bool
    alternatives: int = 1


def combine_verdicts(verdicts: Iterable[Verdict]) -> Verdict:
    verdicts = list(verdicts)
    if "fails" in verdicts:
        return "fails"
    if "partial" in verdicts:
        return "partial"
    return "holds"


def aggregate(
    subject: str, condition: str, details: Sequence[CheckReport], depth: int, notes: Sequence[str] = ()
) -> CheckReport:
    """Roll sub-reports into one; witnesses come from the first failing part."""
    verdict = combine_verdicts(r.verdict for r in details)
    witnesses: list[Any] = []
    for r in details:
        if r.verdict == "fails":
            witnesses = [{"condition": r.condition, "witness": w} for w in r.witnesses]
            break
    return CheckReport(
        subject=subject,
        condition=condition,
        verdict=verdict,
        witnesses=witnesses,
        depth=depth,
        notes=list(notes),
        details=list(details),
    )


def show_cell(X: TruncatedSimplicialSet, n: int, x: int) -> str:
    return str(X.label(n, x))


def cap_witnesses(items: list) -> list:
    return items[: compute_settings.max_witnesses]


# -- Kan conditions ----------------------------------------------------------


def check_kan(
    X: TruncatedSimplicialSet, m: int, j: Optional[int] = None, mode: KanMode = "fill"
) -> CheckReport:
    """
    Kan(m,j) (surjective lambda_star), Kan!(m,j) (bijective) or Kan!!(m,j).

    With ``j`` None all horns of dimension ``m`` are checked.
    """
    mark = {"fill": "", "unique": "!", "etale": "!!"}[mode]
    if m < 1:
        raise InvalidIndex(f"Kan conditions start at m = 1, got {m}")
    if j is None:
        parts = [check_kan(X, m, k, mode) for k in range(m + 1)]
        return aggregate(X.name, f"Kan{mark}({m})", parts, min(m, X.N))
    if not 0 <= j <= m:
        raise InvalidIndex(f"horn index {j} outside 0..{m}")
    condition = f"Kan{mark}({m},{j})"
    if m > X.N:
        return CheckReport(
            subject=X.name,
            condition=condition,
            verdict="partial",
            depth=X.N,
            notes=[f"level {m} is above the truncation {X.N}"],
        )
    if mode == "etale":
        return CheckReport(
            subject=X.name,
            condition=condition,
            verdict="holds",
            depth=m,
            notes=["vacuous: every map of finite discrete sets is étale"],
        )
    table = horn_restriction(X, m, j)
    fillers = table.fillers()
    unfilled = [
        {"horn": [show_cell(X, m - 1, y) for y in table.horns[k]]}
        for k, cells in enumerate(fillers)
        if not cells
    ]
    witnesses = unfilled
    if mode == "unique":
        witnesses = witnesses + [
            {
                "horn": [show_cell(X, m - 1, y) for y in table.horns[k]],
                "fillers": [show_cell(X, m, x) for x in cells],
            }
            for k, cells in enumerate(fillers)
            if len(cells) > 1
        ]
    logger.debug(f"{condition} on {X.name}: {len(table.horns)} horns, {len(witnesses)} witnesses")
    return CheckReport(
        subject=X.name,
        condition=condition,
        verdict="fails" if witnesses else "holds",
        witnesses=cap_witnesses(witnesses),
        depth=m,
    )


def classify_n_groupoid(X: TruncatedSimplicialSet, n: int) -> CheckReport:
    """Kan(m) for 1 <= m <= n and Kan!(m) for n < m <= N."""
    if n < 0:
        raise InvalidIndex(f"n-groupoid level must be non-negative, got {n}")
    parts = [check_kan(X, m, mode="fill") for m in range(1, min(n, X.N) + 1)]
    parts += [check_kan(X, m, mode="unique") for m in range(n + 1, X.N + 1)]
    notes = [] if X.N >= n + 2 else [f"verified to depth {X.N}; a {n}-groupoid needs level {n + 2}"]
    report = aggregate(X.name, f"{n}-groupoid", parts, X.N, notes)
    if report.verdict == "holds" and notes:
        report = report.model_copy(update={"verdict": "partial"})
    return report


def _horn_faces(horn: Union[HornTuple, Sequence[int]]) -> tuple[int, ...]:
    return horn.faces if isinstance(horn, HornTuple) else tuple(horn)


def horn_fillers(
    X: TruncatedSimplicialSet, m: int, j: int, horn: Union[HornTuple, Sequence[int]]
) -> list[int]:
    table: HornTable = horn_restriction(X, m, j)
    k = table.index_of(_horn_faces(horn))
    if k is None:
        return []
    return [x for x in X.cells(m) if table.restriction[x] == k]


def fill_horn(
    X: TruncatedSimplicialSet, m: int, j: int, horn: Union[HornTuple, Sequence[int]]
) -> Filler:
    """Least filler of a horn (faces ``d_i``, ``i != j``, ascending)."""
    cells = horn_fillers(X, m, j, horn)
    if not cells:
        raise NoFiller(
            f"horn Λ[{m},{j}] {list(_horn_faces(horn))} has no filler in {X.name}",
            witness={"m": m, "j": j, "horn": list(_horn_faces(horn))},
        )
    return Filler(cell=cells[0], unique=len(cells) == 1, alternatives=len(cells))


def fill_relative_horn(
    f: SimplicialMap, m: int, j: int, horn: Union[HornTuple, Sequence[int]], base: int
) -> Filler:
    """Least ``k`` in the source with the given horn and ``f(k) = base``."""
    cells = [k for k in horn_fillers(f.source, m, j, horn) if f.levels[m][k] == base]
    if not cells:
        raise NoFiller(
            f"relative horn Λ[{m},{j}] over {base} has no lift along {f.name}",
            witness={"m": m, "j": j, "horn": list(_horn_faces(horn)), "base": base},
        )
    return Filler(cell=cells[0], unique=len(cells) == 1, alternatives=len(cells))


# -- relative conditions ---------------------------------------------------------


def _tau_report(
    f: SimplicialMap,
    condition: str,
    requirement: Literal["surjective", "bijective"],
    images: Sequence[tuple],
    codomain: Sequence[tuple],
    describe,
) -> CheckReport:
    """Check ``k ↦ images[k]`` against the codomain listing."""
    hits: dict[tuple, list[int]] = {}
    for k, image in enumerate(images):
        hits.setdefault(image, []).append(k)
    witnesses = [{"missing": describe(c)} for c in codomain if c not in hits]
    if requirement == "bijective":
        witnesses += [
            {"collision": describe(c), "cells": ks} for c, ks in hits.items() if len(ks) > 1
        ]
    return CheckReport(
        subject=f.name,
        condition=f"{condition} {requirement}",
        verdict="fails" if witnesses else "holds",
        witnesses=cap_witnesses(witnesses),
        depth=f.depth,
    )


def _tau_zero(f: SimplicialMap, requirement) -> CheckReport:
    K, G = f.source, f.target
    return _tau_report(
        f,
        "τ_0",
        requirement,
        [(f.levels[0][k],) for k in K.cells(0)],
        [(g,) for g in G.cells(0)],
        lambda c: show_cell(G, 0, c[0]),
    )


def _tau_horn(f: SimplicialMap, m: int, j: int, requirement) -> CheckReport:
    """``τ_{m,j}: K_m → Hom(Λ[m,j], K) ×_{Hom(Λ[m,j], G)} G_m``."""
    K, G = f.source, f.target
    horns_k, horns_g = horn_restriction(K, m, j), horn_restriction(G, m, j)
    over: dict[int, list[int]] = {}
    for g in G.cells(m):
        over.setdefault(horns_g.restriction[g], []).append(g)
    codomain = []
    for h, faces in enumerate(horns_k.horns):
        pushed = horns_g.index_of([f.levels[m - 1][y] for y in faces])
        codomain.extend((h, g) for g in over.get(pushed, ()))
    images = [(horns_k.restriction[k], f.levels[m][k]) for k in K.cells(m)]
    return _tau_report(
        f,
        f"τ_({m},{j})",
        requirement,
        images,
        codomain,
        lambda c: {"horn": [show_cell(K, m - 1, y) for y in horns_k.horns[c[0]]], "base": show_cell(G, m, c[1])},
    )


def _tau_boundary(f: SimplicialMap, m: int, requirement) -> CheckReport:
    """``τ_m: K_m → Hom(∂Δ[m], K) ×_{Hom(∂Δ[m], G)} G_m``."""
    K, G = f.source, f.target
    bd_k, bd_g = boundary_restriction(K, m), boundary_restriction(G, m)
    over: dict[int, list[int]] = {}
    for g in G.cells(m):
        over.setdefault(bd_g.restriction[g], []).append(g)
    codomain = []
    for b, faces in enumerate(bd_k.horns):
        pushed = bd_g.index_of([f.levels[m - 1][y] for y in faces])
        codomain.extend((b, g) for g in over.get(pushed, ()))
    images = [(bd_k.restriction[k], f.levels[m][k]) for k in K.cells(m)]
    return _tau_report(
        f,
        f"τ_{m}",
        requirement,
        images,
        codomain,
        lambda c: {"boundary": [show_cell(K, m - 1, y) for y in bd_k.horns[c[0]]], "base": show_cell(G, m, c[1])},
    )


def _relative_levels(f: SimplicialMap, n: int) -> tuple[list[int], list[str], bool]:
    depth = f.depth
    levels = list(range(0, min(n + 1, depth) + 1))
    notes = []
    if depth < n:
        notes.append(f"verified to depth {depth}; level {n} is above the truncation")
    elif depth < n + 1:
        notes.append(f"level {n + 1} consistency check skipped above truncation {depth}")
    return levels, notes, depth < n


def check_fibration(f: SimplicialMap, n: int) -> CheckReport:
    """Kan fibration: τ_{m,j} surjective for m < n, bijective for m = n, n + 1."""
    if f.kind != "full":
        raise InvalidIndex(f"fibration check needs a full map, {f.name} is {f.kind}")
    levels, notes, short = _relative_levels(f, n)
    parts = []
    for m in levels:
        requirement = "surjective" if m < n else "bijective"
        if m == 0:
            parts.append(_tau_zero(f, requirement))
        else:
            parts.extend(_tau_horn(f, m, j, requirement) for j in range(m + 1))
    notes.append("submersion and properness conditions are vacuous for finite sets")
    report = aggregate(f.name, f"Kan fibration (n={n})", parts, f.depth, notes)
    if short and report.verdict == "holds":
        report = report.model_copy(update={"verdict": "partial"})
    logger.info(f"Fibration check {f.name} n={n}: {report.verdict}")
    return report


def check_hypercover(f: SimplicialMap, n: int) -> CheckReport:
    """τ_m surjective for m < n and bijective for m >= n within truncation."""
    if f.kind != "full":
        raise InvalidIndex(f"hypercover check needs a full map, {f.name} is {f.kind}")
    levels, notes, short = _relative_levels(f, n)
    parts = []
    for m in levels:
        requirement = "surjective" if m < n else "bijective"
        parts.append(_tau_zero(f, requirement) if m == 0 else _tau_boundary(f, m, requirement))
    report = aggregate(f.name, f"hypercover (n={n})", parts, f.depth, notes)
    if short and report.verdict == "holds":
        report = report.model_copy(update={"verdict": "partial"})
    logger.info(f"Hypercover check {f.name} n={n}: {report.verdict}")
    return report


def equivalence_map(
    f: SimplicialMap, depth: Optional[int] = None
) -> tuple[SimplicialMap, int]:
    """``d¹₀ ∘ pr₂: Y ×_{f, X, d¹₁} X^[1] → X`` and the depth it was built to."""
    X = f.target
    if depth is None:
        depth = min(f.depth, X.N - 1)
    if depth < 1 or depth + 1 > X.N:
        raise DepthExceedsTruncation(
            f"equivalence to depth {depth} needs {X.name} up to level {depth + 1}, truncated at {X.N}",
            witness={"needed": depth + 1, "available": X.N},
        )
    cyl = build_cylinder(X, 1, depth)
    _, _, pr2 = fiber_product(f, cyl.evaluation(0), name=f"{f.source.name}×{X.name}^[1]")
    return compose(pr2, cyl.evaluation(1), name=f"d¹₀∘pr₂({f.name})"), depth


def check_equivalence(f: SimplicialMap, n: int = 1, depth: Optional[int] = None) -> CheckReport:
    """Equivalence of n-groupoids via the hypercover test on the mapping path map."""
    g, used = equivalence_map(f, depth)
    inner = check_hypercover(g, n)
    notes = [f"cylinder built to depth {used}"]
    return CheckReport(
        subject=f.name,
        condition=f"equivalence (n={n})",
        verdict=inner.verdict,
        witnesses=inner.witnesses,
        depth=used,
        notes=notes + inner.notes,
        details=[inner],
    )
