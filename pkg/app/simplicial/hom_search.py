"""
Hom-set search between finite truncated simplicial sets.

A simplicial map out of a finite complex is determined by the images of its
nondegenerate cells; degenerate images are forced by ``f(s_i y) = s_i f(y)``.
``HomSearch`` assigns nondegenerate cells one at a time, taking candidates
from the target's boundary index so that every partial assignment already
commutes with faces. The same engine backs horn tables, prism searches,
natural transformations and isomorphism search.
"""

import logging
from typing import Callable, Collection, Iterator, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from app.errors import (
    CoherenceFailure,
    DepthExceedsTruncation,
    InvalidIndex,
    TargetMismatch,
    TruncationMismatch,
)
from app.simplicial.core import (
    SimplicialMap,
    TruncatedSimplicialSet,
    agree_up_to,
    apply_operator,
    from_tables,
    product,
    standard_complex,
    truncate,
    vertices,
)

logger = logging.getLogger(__name__)

CellKey = tuple[int, int]
Restriction = Callable[[int, int, int], bool]


class HomSearch:
    """
    Backtracking enumeration of simplicial maps ``A → X``.

    Args:
        domain: Finite source complex A
        target: Target complex X with ``X.N >= depth``
        allowed: ``(level, cell) -> candidate target cells`` for cells of A
        restrict: extra predicate ``(level, cell, candidate) -> bool``
        injective: only assign distinct images per level to nondegenerate cells
        limit: stop after this many solutions
        depth: highest level of A to map (defaults to ``A.N``)
    """

    def __init__(
        self,
        domain: TruncatedSimplicialSet,
        target: TruncatedSimplicialSet,
        allowed: Optional[Mapping[CellKey, Collection[int]]] = None,
        restrict: Optional[Restriction] = None,
        injective: bool = False,
        limit: Optional[int] = None,
        depth: Optional[int] = None,
    ):
        self.domain = domain
        self.target = target
        self.depth = domain.N if depth is None else depth
        if self.depth > domain.N:
            raise InvalidIndex(f"search depth {self.depth} exceeds domain level {domain.N}")
        if target.N < self.depth:
            raise TruncationMismatch(
                f"target {target.name} is truncated at {target.N}, below domain level {self.depth}"
            )
        self.allowed = {k: set(v) for k, v in (allowed or {}).items()}
        self.restrict = restrict
        self.injective = injective
        self.limit = limit
        self.trials = 0
        self.solutions_count = 0
        self.order = self._search_order()
        self._assigned: list[dict[int, int]] = [dict() for _ in range(self.depth + 1)]
        self._used: list[set[int]] = [set() for _ in range(self.depth + 1)]

    def _search_order(self) -> list[CellKey]:
        """Nondegenerate cells by (latest vertex, dimension, id); faces come first."""
        A = self.domain
        keyed = []
        for n in range(self.depth + 1):
            for x in A.nondegenerate(n):
                last_vertex = max(vertices(A, n, x)) if n else x
                keyed.append(((last_vertex, n, x), (n, x)))
        keyed.sort()
        return [cell for _, cell in keyed]

    def _image(self, n: int, x: int) -> int:
        witness = self.domain.degeneracy_witness(n, x) if n else None
        if witness is None:
            return self._assigned[n][x]
        i, y = witness
        return self.target.degens[n - 1][i][self._image(n - 1, y)]

    def _candidates(self, n: int, x: int) -> list[int]:
        A, X = self.domain, self.target
        if n == 0:
            base: Sequence[int] = X.cells(0)
        else:
            key = tuple(self._image(n - 1, A.faces[n][i][x]) for i in range(n + 1))
            base = X.boundary_index(n).get(key, ())
        allowed = self.allowed.get((n, x))
        out = []
        for c in base:
            if allowed is not None and c not in allowed:
                continue
            if self.injective and c in self._used[n]:
                continue
            if self.restrict is not None and not self.restrict(n, x, c):
                continue
            out.append(c)
        return out

    def _complete(self) -> tuple[tuple[int, ...], ...]:
        A, X = self.domain, self.target
        tables: list[list[int]] = []
        for n in range(self.depth + 1):
            level = []
            for x in A.cells(n):
                witness = A.degeneracy_witness(n, x) if n else None
                if witness is None:
                    level.append(self._assigned[n][x])
                else:
                    i, y = witness
                    level.append(X.degens[n - 1][i][tables[n - 1][y]])
            tables.append(level)
        return tuple(tuple(level) for level in tables)

    def solutions(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        """Yield level tables of every map, in deterministic order."""
        order = self.order
        if not order:
            self.solutions_count = 1
            yield self._complete()
            return
        candidates: list[list[int]] = [[] for _ in order]
        pointers = [0] * len(order)
        pos = 0
        candidates[0] = self._candidates(*order[0])
        while pos >= 0:
            n, x = order[pos]
            if x in self._assigned[n]:
                self._used[n].discard(self._assigned[n].pop(x))
            if pointers[pos] >= len(candidates[pos]):
                pointers[pos] = 0
                pos -= 1
                continue
            value = candidates[pos][pointers[pos]]
            pointers[pos] += 1
            self.trials += 1
            self._assigned[n][x] = value
            self._used[n].add(value)
            if pos + 1 == len(order):
                self.solutions_count += 1
                yield self._complete()
                if self.limit is not None and self.solutions_count >= self.limit:
                    break
            else:
                pos += 1
                pointers[pos] = 0
                candidates[pos] = self._candidates(*order[pos])
        for level in self._assigned:
            level.clear()
        for used in self._used:
            used.clear()
        logger.debug(
            f"Hom search {self.domain.name} → {self.target.name}: "
            f"{self.solutions_count} solutions, {self.trials} trials"
        )

    def run(self) -> list[tuple[tuple[int, ...], ...]]:
        return list(self.solutions())


def enumerate_maps(
    A: TruncatedSimplicialSet,
    X: TruncatedSimplicialSet,
    allowed: Optional[Mapping[CellKey, Collection[int]]] = None,
    limit: Optional[int] = None,
) -> list[SimplicialMap]:
    """All full simplicial maps ``A → X`` (X truncated at or above ``A.N``)."""
    if X.N < A.N:
        raise TruncationMismatch(f"{X.name} (N={X.N}) is truncated below {A.name} (N={A.N})")
    target = X if X.N == A.N else truncate(X, A.N)
    return [
        SimplicialMap(name=f"{A.name}→{X.name}#{k}", source=A, target=target, levels=tables)
        for k, tables in enumerate(HomSearch(A, target, allowed=allowed, limit=limit).solutions())
    ]


def count_maps(A: TruncatedSimplicialSet, X: TruncatedSimplicialSet) -> int:
    return sum(1 for _ in HomSearch(A, X).solutions())


# -- horn and boundary tables ----------------------------------------------------


class HornTuple(BaseModel):
    """Faces ``d_i`` (``i != j``, ascending) of an ``m``-horn in a complex."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    j: Optional[int] = Field(default=None, description="Omitted face; None for boundaries")
    faces: tuple[int, ...]

    def face(self, i: int) -> int:
        """The face ``d_i`` by its index in Δ[m]."""
        positions = [k for k in range(self.m + 1) if k != self.j]
        return self.faces[positions.index(i)]


class HornTable(BaseModel):
    """All compatible horn (or boundary) tuples of a complex and the restriction map."""

    model_config = ConfigDict(frozen=True)

    m: int
    j: Optional[int] = None
    horns: tuple[tuple[int, ...], ...]
    restriction: tuple[int, ...] = Field(description="lambda_star: m-cell -> horn index")

    _index: dict = PrivateAttr(default_factory=dict)

    def index_of(self, faces: Sequence[int]) -> Optional[int]:
        if not self._index:
            self._index.update({h: k for k, h in enumerate(self.horns)})
        return self._index.get(tuple(faces))

    def tuple_at(self, k: int) -> HornTuple:
        return HornTuple(m=self.m, j=self.j, faces=self.horns[k])

    def fillers(self) -> list[list[int]]:
        """Per horn, the cells restricting to it."""
        out: list[list[int]] = [[] for _ in self.horns]
        for x, k in enumerate(self.restriction):
            out[k].append(x)
        return out


def compatible_face_tuples(
    X: TruncatedSimplicialSet, m: int, omit: Optional[int] = None
) -> list[tuple[int, ...]]:
    """
    Tuples of ``(m-1)``-cells indexed by ``i != omit`` satisfying
    ``d_a y_b = d_{b-1} y_a`` for ``a < b``: ``Hom(Λ[m,omit], X)`` or
    ``Hom(∂Δ[m], X)`` when ``omit`` is None.
    """
    if m < 1 or m - 1 > X.N:
        raise InvalidIndex(f"face tuples of dimension {m} need 1 <= m <= {X.N + 1}")
    positions = [i for i in range(m + 1) if i != omit]
    level = m - 1
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def candidates(b: int) -> Sequence[int]:
        earlier = positions[: len(chosen)]
        if level == 0 or not earlier:
            return X.cells(level)
        pool: Optional[set[int]] = None
        first = True
        result: Sequence[int] = ()
        for a, y_a in zip(earlier, chosen):
            need = X.faces[level][b - 1][y_a]
            matches = X.single_face_index(level, a).get(need, ())
            if first:
                result = matches
                pool = set(matches)
                first = False
            else:
                pool &= set(matches)
        return [c for c in result if c in pool]

    def extend() -> None:
        if len(chosen) == len(positions):
            out.append(tuple(chosen))
            return
        b = positions[len(chosen)]
        for c in candidates(b):
            chosen.append(c)
            extend()
            chosen.pop()

    extend()
    return out


def horn_restriction(X: TruncatedSimplicialSet, m: int, j: int) -> HornTable:
    """Horn tuples of ``Λ[m,j]`` in X and ``lambda_star: X_m → horns``."""
    if not 0 <= j <= m or m > X.N or m < 1:
        raise InvalidIndex(f"horn Λ[{m},{j}] needs 0 <= j <= m <= {X.N}")
    key = ("horns", m, j)
    memo = X._memo
    if key not in memo:
        horns = compatible_face_tuples(X, m, j)
        memo[key] = _restriction_table(X, m, j, horns)
    return memo[key]


def boundary_restriction(X: TruncatedSimplicialSet, m: int) -> HornTable:
    """Boundary tuples ``Hom(∂Δ[m], X)`` and ``partial_star: X_m → tuples``."""
    if m < 1 or m > X.N:
        raise InvalidIndex(f"boundary of dimension {m} needs 1 <= m <= {X.N}")
    key = ("boundaries", m)
    memo = X._memo
    if key not in memo:
        memo[key] = _restriction_table(X, m, None, compatible_face_tuples(X, m, None))
    return memo[key]


def _restriction_table(
    X: TruncatedSimplicialSet, m: int, j: Optional[int], horns: list[tuple[int, ...]]
) -> HornTable:
    positions = [i for i in range(m + 1) if i != j]
    index = {h: k for k, h in enumerate(horns)}
    restriction = tuple(index[tuple(X.faces[m][i][x] for i in positions)] for x in X.cells(m))
    logger.debug(f"{X.name}: {len(horns)} tuples for m={m}, j={j}")
    return HornTable(m=m, j=j, horns=tuple(horns), restriction=restriction)


def coskeletal_extension(
    X: TruncatedSimplicialSet,
    predicate: Optional[Callable[[tuple[int, ...]], bool]] = None,
    name: Optional[str] = None,
) -> TruncatedSimplicialSet:
    """
    Add level ``N+1`` as ``Hom(∂Δ[N+1], X)`` (optionally filtered).

    Degeneracies into the new level are forced by the simplicial identities;
    a predicate that rejects a degenerate boundary raises CoherenceFailure.
    """
    N = X.N
    top = [t for t in compatible_face_tuples(X, N + 1) if predicate is None or predicate(t)]
    index = {t: k for k, t in enumerate(top)}
    new_faces = [[t[i] for t in top] for i in range(N + 2)]
    new_degens = []
    for j in range(N + 1):
        table = []
        for x in X.cells(N):
            boundary = []
            for i in range(N + 2):
                if i < j:
                    boundary.append(X.degens[N - 1][j - 1][X.faces[N][i][x]])
                elif i in (j, j + 1):
                    boundary.append(x)
                else:
                    boundary.append(X.degens[N - 1][j][X.faces[N][i - 1][x]])
            k = index.get(tuple(boundary))
            if k is None:
                raise CoherenceFailure(
                    f"s_{j} of {N}-cell {x} has a boundary outside the extension of {X.name}",
                    witness={"level": N, "degeneracy": j, "cell": x},
                )
            table.append(k)
        new_degens.append(table)
    labels = [list(level) for level in X.labels] if X.labels else None
    if labels is not None:
        labels.append(top)
    extended = from_tables(
        N + 1,
        list(X.sizes) + [len(top)],
        list(X.faces) + [new_faces],
        list(X.degens[:N]) + [new_degens, []],
        labels,
        name or X.name,
    )
    logger.debug(f"Coskeletal extension of {X.name}: {len(top)} cells at level {N + 1}")
    return extended


# -- prisms and cylinders ------------------------------------------------------


class Prism:
    """
    ``Δ[n] × Δ[k]`` with cell lookup by vertex-sequence pairs.

    Maps out of the prism are stored as level tables; ``value`` evaluates
    them on any pair of sequences, including degenerate ones above the
    prism's top dimension.
    """

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        top = max(n + k, 1)
        self.complex = product(
            standard_complex("simplex", n, N=top), standard_complex("simplex", k, N=top)
        )
        self.index = [
            {label: c for c, label in enumerate(self.complex.labels[level])}
            for level in range(top + 1)
        ]

    def cell(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, int]:
        level = len(a) - 1
        return level, self.index[level][(tuple(a), tuple(b))]

    def value(
        self, X: TruncatedSimplicialSet, tables: Sequence[Sequence[int]], a: Sequence[int], b: Sequence[int]
    ) -> int:
        level = len(a) - 1
        if level <= self.complex.N:
            return tables[level][self.index[level][(tuple(a), tuple(b))]]
        for p in range(level):
            if a[p] == a[p + 1] and b[p] == b[p + 1]:
                lower = self.value(X, tables, a[:p] + a[p + 1 :], b[:p] + b[p + 1 :])
                return X.degens[level - 1][p][lower]
        raise InvalidIndex(f"sequence pair {tuple(a)}, {tuple(b)} is not degenerate")

    def vertical(self, i: int) -> tuple[int, int]:
        """The edge ``(i, 0) → (i, k)`` over vertex ``i`` (k = 1 cylinders)."""
        return self.cell((i, i), (0, self.k))

    def layer(self, q: int) -> tuple[int, int]:
        """The copy ``Δ[n] × {q}``."""
        return self.cell(tuple(range(self.n + 1)), (q,) * (self.n + 1))

    def key(self, tables: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Images of nondegenerate cells: identifies the map."""
        P = self.complex
        return tuple(
            tables[level][c] for level in range(P.N + 1) for c in P.nondegenerate(level)
        )

    def cells_over(self, image: Collection[int]) -> list[tuple[int, int]]:
        """Cells whose first coordinate only uses vertices in ``image``."""
        P = self.complex
        out = []
        for level in range(P.N + 1):
            for c, (a, _) in enumerate(P.labels[level]):
                if set(a) <= set(image):
                    out.append((level, c))
        return out

    def constant_tables(self, X: TruncatedSimplicialSet, x: int) -> list[list[int]]:
        """The degenerate cylinder on the ``n``-cell x (projection to Δ[n])."""
        P = self.complex
        return [
            [apply_operator(X, self.n, x, a) for (a, _) in P.labels[level]]
            for level in range(P.N + 1)
        ]


class Cylinder(BaseModel):
    """``X^[k]`` truncated at ``depth`` with the data behind each cell."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: TruncatedSimplicialSet
    k: int
    depth: int
    complex: TruncatedSimplicialSet
    tables: tuple[tuple[tuple[tuple[int, ...], ...], ...], ...] = Field(
        description="tables[n][c] are the prism level tables of cylinder cell c"
    )

    def prism(self, n: int) -> Prism:
        return standard_prism(n, self.k)

    def endpoint(self, n: int, c: int, q: int) -> int:
        """Restriction of the cell to ``Δ[n] × {q}``."""
        P = self.prism(n)
        level, cell = P.layer(q)
        return self.tables[n][c][level][cell]

    def evaluation(self, q: int) -> SimplicialMap:
        """``X^[k] → X`` restricting to vertex ``q`` of Δ[k]; for k = 1, q = 0 is d¹₁."""
        levels = tuple(
            tuple(self.endpoint(n, c, q) for c in self.complex.cells(n))
            for n in range(self.depth + 1)
        )
        return SimplicialMap(name=f"ev{q}", source=self.complex, target=self.base, levels=levels)

    def constant(self) -> SimplicialMap:
        """``s⁰₀: X → X^[k]`` sending a cell to its degenerate cylinder."""
        index = [
            {self.prism(n).key(t): c for c, t in enumerate(self.tables[n])}
            for n in range(self.depth + 1)
        ]
        source = self.base if self.base.N == self.depth else truncate(self.base, self.depth)
        levels = tuple(
            tuple(
                index[n][self.prism(n).key(self.prism(n).constant_tables(self.base, x))]
                for x in source.cells(n)
            )
            for n in range(self.depth + 1)
        )
        return SimplicialMap(name="const", source=source, target=self.complex, levels=levels)


_PRISMS: dict[tuple[int, int], Prism] = {}


def standard_prism(n: int, k: int) -> Prism:
    if (n, k) not in _PRISMS:
        _PRISMS[(n, k)] = Prism(n, k)
    return _PRISMS[(n, k)]


def prism_maps(
    X: TruncatedSimplicialSet,
    n: int,
    k: int = 1,
    fixed: Optional[Mapping[CellKey, int]] = None,
    allowed: Optional[Mapping[CellKey, Collection[int]]] = None,
    limit: Optional[int] = None,
) -> tuple[Prism, list[tuple[tuple[int, ...], ...]]]:
    """Maps ``Δ[n] × Δ[k] → X`` subject to per-cell constraints."""
    P = standard_prism(n, k)
    if X.N < P.complex.N:
        raise DepthExceedsTruncation(
            f"Δ[{n}]×Δ[{k}] needs {X.name} up to level {P.complex.N}, truncated at {X.N}",
            witness={"needed": P.complex.N, "available": X.N},
        )
    constraints: dict[CellKey, Collection[int]] = dict(allowed or {})
    for cell, value in (fixed or {}).items():
        constraints[cell] = {value} & set(constraints.get(cell, {value}))
    return P, HomSearch(P.complex, X, allowed=constraints, limit=limit).run()


def build_cylinder(X: TruncatedSimplicialSet, k: int, depth: int) -> Cylinder:
    """
    Materialize ``X^[k]`` up to ``depth``; level n is ``Hom(Δ[n] × Δ[k], X)``.

    Raises:
        DepthExceedsTruncation: when ``depth + k > X.N``
    """
    if depth < 1 or k < 0:
        raise InvalidIndex(f"cylinder needs depth >= 1 and k >= 0, got depth={depth}, k={k}")
    if depth + k > X.N:
        raise DepthExceedsTruncation(
            f"{X.name}^[{k}] to depth {depth} needs level {depth + k}, truncated at {X.N}",
            witness={"needed": depth + k, "available": X.N},
        )
    tables: list[list[tuple[tuple[int, ...], ...]]] = []
    keys: list[dict[tuple[int, ...], int]] = []
    for n in range(depth + 1):
        P, maps = prism_maps(X, n, k)
        tables.append(maps)
        keys.append({P.key(t): c for c, t in enumerate(maps)})

    def induced(n_from: int, n_to: int, zeta: Sequence[int], t) -> int:
        """Index at level n_to of the cylinder cell precomposed with (F_ζ, id)."""
        P_from, P_to = standard_prism(n_from, k), standard_prism(n_to, k)
        new_tables = [
            [P_from.value(X, t, tuple(zeta[v] for v in a), b) for (a, b) in P_to.complex.labels[level]]
            for level in range(P_to.complex.N + 1)
        ]
        return keys[n_to][P_to.key(new_tables)]

    faces: list[list[list[int]]] = [[]]
    for n in range(1, depth + 1):
        faces.append(
            [
                [induced(n, n - 1, [v for v in range(n + 1) if v != i], t) for t in tables[n]]
                for i in range(n + 1)
            ]
        )
    degens: list[list[list[int]]] = []
    for n in range(depth):
        degens.append(
            [
                [induced(n, n + 1, list(range(i + 1)) + list(range(i, n + 1)), t) for t in tables[n]]
                for i in range(n + 1)
            ]
        )
    degens.append([])
    labels = [[standard_prism(n, k).key(t) for t in tables[n]] for n in range(depth + 1)]
    complex_ = from_tables(
        depth, [len(t) for t in tables], faces, degens, labels, f"{X.name}^[{k}]"
    )
    logger.info(f"Built cylinder {complex_.describe()}")
    return Cylinder(
        base=X,
        k=k,
        depth=depth,
        complex=complex_,
        tables=tuple(tuple(tuple(tuple(level) for level in t) for t in level_maps) for level_maps in tables),
    )


def cylinder(X: TruncatedSimplicialSet, k: int, depth: int) -> TruncatedSimplicialSet:
    return build_cylinder(X, k, depth).complex


def find_natural_transformations(
    f: SimplicialMap, g: SimplicialMap, depth: Optional[int] = None
) -> list[SimplicialMap]:
    """
    All ``h: X → Y^[1]`` with ``d¹₁ ∘ h = f`` and ``d¹₀ ∘ h = g``.

    ``depth`` defaults to the source truncation; it never shrinks silently.
    """
    X, Y = f.source, f.target
    if not agree_up_to(X, g.source, min(f.depth, g.depth)) or not agree_up_to(
        Y, g.target, min(f.depth, g.depth)
    ):
        raise TargetMismatch(f"{f.name} and {g.name} must share source and target")
    depth = min(f.depth, g.depth) if depth is None else depth
    if depth > min(f.depth, g.depth) or depth + 1 > Y.N:
        raise DepthExceedsTruncation(
            f"transformations to depth {depth} need {Y.name} up to level {depth + 1}, "
            f"truncated at {Y.N}",
            witness={"needed": depth + 1, "available": Y.N},
        )
    cyl = build_cylinder(Y, 1, depth)
    by_ends: list[dict[tuple[int, int], list[int]]] = []
    for n in range(depth + 1):
        index: dict[tuple[int, int], list[int]] = {}
        for c in cyl.complex.cells(n):
            index.setdefault((cyl.endpoint(n, c, 0), cyl.endpoint(n, c, 1)), []).append(c)
        by_ends.append(index)
    domain = X if X.N == depth else truncate(X, depth)
    allowed = {
        (n, x): by_ends[n].get((f.levels[n][x], g.levels[n][x]), [])
        for n in range(depth + 1)
        for x in domain.cells(n)
    }
    return [
        SimplicialMap(name=f"η#{k}", source=domain, target=cyl.complex, levels=tables)
        for k, tables in enumerate(HomSearch(domain, cyl.complex, allowed=allowed).solutions())
    ]


def _signatures(X: TruncatedSimplicialSet) -> list[list[tuple]]:
    """Per cell: degeneracy flag and how often it occurs as each face one level up."""
    out = []
    for n in range(X.N + 1):
        counts = [[0] * (n + 2) for _ in X.cells(n)]
        if n < X.N:
            for i in range(n + 2):
                for y in X.faces[n + 1][i]:
                    counts[y][i] += 1
        out.append(
            [
                (n > 0 and X.degeneracy_witness(n, x) is not None, tuple(counts[x]))
                for x in X.cells(n)
            ]
        )
    return out


def find_isomorphism(
    A: TruncatedSimplicialSet,
    B: TruncatedSimplicialSet,
    compatible: Optional[Restriction] = None,
) -> Optional[SimplicialMap]:
    """An isomorphism ``A → B`` (optionally respecting ``compatible``), or None."""
    if A.N != B.N or A.sizes != B.sizes:
        return None
    sig_a, sig_b = _signatures(A), _signatures(B)
    for n in range(A.N + 1):
        if sorted(sig_a[n]) != sorted(sig_b[n]):
            return None

    def restrict(n: int, x: int, c: int) -> bool:
        if sig_a[n][x] != sig_b[n][c]:
            return False
        return compatible is None or compatible(n, x, c)

    for tables in HomSearch(A, B, restrict=restrict, injective=True).solutions():
        if all(len(set(level)) == len(level) for level in tables):
            if compatible is None or all(
                compatible(n, x, c) for n, level in enumerate(tables) for x, c in enumerate(level)
            ):
                return SimplicialMap(name="iso", source=A, target=B, levels=tables)
    return None


def isomorphic(A: TruncatedSimplicialSet, B: TruncatedSimplicialSet) -> bool:
    return find_isomorphism(A, B) is not None
