"""
Moving fibrations along base maps: pullback along any full map and
pushforward along a hypercover that is bijective on vertices.
"""

import logging
from typing import Optional

from app.actions.bundles import FibrationBundle, make_bundle
from app.errors import (
    BaseVertexMapNotBijective,
    DepthExceedsTruncation,
    NotAHypercover,
    WellDefinednessFailure,
)
from app.simplicial.core import (
    SimplicialMap,
    TruncatedSimplicialSet,
    apply_operator,
    compose,
    fiber_product,
    from_tables,
    iterated_degeneracy,
    truncate,
)
from app.simplicial.hom_search import prism_maps, standard_prism
from app.simplicial.kan_verify import check_hypercover
from app.utilities.union_find import UnionFind

logger = logging.getLogger(__name__)


def _fit_source(f: SimplicialMap, N: int) -> tuple[TruncatedSimplicialSet, tuple[tuple[int, ...], ...]]:
    source = f.source if f.source.N <= N else truncate(f.source, N)
    return source, f.levels[: min(source.N, N) + 1]


def pullback(bundle: FibrationBundle, phi: SimplicialMap, name: Optional[str] = None) -> FibrationBundle:
    """
    ``φ*K = H ×_G K`` with the first projection, recertified.

    The fiber inclusion survives when some vertex of H lands on the base
    vertex; the least such vertex becomes the new base vertex.
    """
    P, pr1, pr2 = fiber_product(phi, bundle.pi, name=name or f"{phi.name}*{bundle.name}")
    incl = None
    over_base = [v for v, y in enumerate(phi.levels[0]) if y == bundle.base_vertex]
    base_vertex = over_base[0] if over_base else 0
    if bundle.incl is not None and over_base:
        position = [
            {(pr1.levels[n][p], pr2.levels[n][p]): p for p in P.cells(n)} for n in range(P.N + 1)
        ]
        source, old = _fit_source(bundle.incl, P.N)
        levels = tuple(
            tuple(position[n][(iterated_degeneracy(phi.source, base_vertex, n), k)] for k in old[n])
            for n in range(len(old))
        )
        incl = SimplicialMap(name="ι", source=source, target=P, levels=levels)
    pulled = make_bundle(P.name, pr1, bundle.n, incl=incl, base_vertex=base_vertex)
    logger.info(f"Pulled back {bundle.name} along {phi.name}: {pulled.describe()}")
    return pulled


def _check_pushforward_base(f: SimplicialMap, hypercover_n: int) -> None:
    report = check_hypercover(f, hypercover_n)
    if report.verdict == "fails":
        raise NotAHypercover(
            f"{f.name} is not a hypercover at n={hypercover_n}", witness=report.witnesses
        )
    images = f.levels[0]
    if len(set(images)) != len(images) or len(images) != f.target.sizes[0]:
        raise BaseVertexMapNotBijective(
            f"{f.name} is not bijective on vertices", witness={"images": list(images)}
        )


def _prism_relation(E: TruncatedSimplicialSet, over: SimplicialMap, Y: TruncatedSimplicialSet, n: int) -> UnionFind:
    """
    Join ``e`` to every top of a prism ``Δ[n]×Δ[1] → E`` with bottom ``e``,
    degenerate vertical edges and image in Y the constant cylinder on the
    image of ``e``.
    """
    by_image = [{} for _ in range(n + 2)]
    for level in range(n + 2):
        for k in E.cells(level):
            by_image[level].setdefault(over.levels[level][k], []).append(k)
    classes = UnionFind(E.sizes[n])
    for e in E.cells(n):
        y = over.levels[n][e]
        P = standard_prism(n, 1)
        allowed = {}
        for level in range(P.complex.N + 1):
            for c, (a, _) in enumerate(P.complex.labels[level]):
                allowed[(level, c)] = by_image[level].get(apply_operator(Y, n, y, a), ())
        fixed = {P.layer(0): e}
        for i in range(n + 1):
            vertex = apply_operator(E, n, e, (i,))
            fixed[P.vertical(i)] = E.degens[0][0][vertex]
        _, maps = prism_maps(E, n, 1, fixed=fixed, allowed=allowed)
        top_level, top_cell = P.layer(1)
        classes.union_all([e] + [tables[top_level][top_cell] for tables in maps])
    return classes


def pushforward(
    bundle: FibrationBundle, f: SimplicialMap, hypercover_n: int = 2, name: Optional[str] = None
) -> FibrationBundle:
    """
    ``f_*E → Y``: level ``n`` of the total space is ``E_n`` modulo the prism
    relation over constant cylinders of Y; faces and degeneracies descend.

    The result is one level shorter than E.

    Raises:
        NotAHypercover: f fails the hypercover check
        BaseVertexMapNotBijective: f is not a bijection on vertices
        WellDefinednessFailure: a structure map does not descend to classes
    """
    _check_pushforward_base(f, hypercover_n)
    E = bundle.K
    Y = f.target
    over = compose(bundle.pi, f, name=f"{f.name}∘π")
    N = E.N - 1
    if N < 1 or over.depth < N + 1:
        raise DepthExceedsTruncation(
            f"pushforward of {bundle.name} needs the composite to reach level {N + 1}",
            witness={"needed": max(N + 1, 2), "available": over.depth},
        )

    reps: list[list[int]] = []
    class_of: list[list[int]] = []
    for n in range(N + 1):
        r, c = _prism_relation(E, over, Y, n).classes()
        reps.append(r)
        class_of.append(c)
        logger.debug(f"Pushforward level {n}: {E.sizes[n]} cells in {len(r)} classes")

    def descend(table: tuple[int, ...], n_from: int, n_to: int, what: str) -> list[int]:
        out = [-1] * len(reps[n_from])
        for e in E.cells(n_from):
            image = class_of[n_to][table[e]]
            k = class_of[n_from][e]
            if out[k] == -1:
                out[k] = image
            elif out[k] != image:
                raise WellDefinednessFailure(
                    f"{what} does not descend to classes on level {n_from}",
                    witness={"level": n_from, "cell": e},
                )
        return out

    faces = [[]] + [
        [descend(E.faces[n][i], n, n - 1, f"d_{i}") for i in range(n + 1)] for n in range(1, N + 1)
    ]
    degens = [
        [descend(E.degens[n][i], n, n + 1, f"s_{i}") for i in range(n + 1)] for n in range(N)
    ] + [[]]
    labels = [[E.label(n, r) for r in reps[n]] for n in range(N + 1)]
    F = from_tables(N, [len(r) for r in reps], faces, degens, labels, name or f"{f.name}_*{bundle.name}")
    depth = min(N, Y.N)
    pi = SimplicialMap(
        name="π",
        source=F if F.N == depth else truncate(F, depth),
        target=Y,
        levels=tuple(tuple(over.levels[n][r] for r in reps[n]) for n in range(depth + 1)),
    )

    incl = None
    base_vertex = f.levels[0][bundle.base_vertex]
    if bundle.incl is not None:
        source, old = _fit_source(bundle.incl, N)
        incl = SimplicialMap(
            name="ι",
            source=source,
            target=F,
            levels=tuple(tuple(class_of[n][k] for k in old[n]) for n in range(len(old))),
        )
    pushed = make_bundle(F.name, pi, bundle.n, incl=incl, base_vertex=base_vertex)
    logger.info(f"Pushed {bundle.name} forward along {f.name}: {pushed.describe()}")
    return pushed
