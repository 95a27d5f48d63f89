"""
Finite truncated simplicial sets and simplicial maps.

Cells are integers ``0..size-1`` per level. ``faces[n][i][x]`` is ``d_i`` of
the ``n``-cell ``x`` and ``degens[n][i][x]`` is ``s_i`` of it. Values are
validated on construction (totality and every simplicial identity within the
truncation) and are immutable afterwards; derived indexes are memoized on
the instance.
"""

import logging
from itertools import combinations_with_replacement
from typing import Any, Hashable, Iterable, Literal, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from app.errors import (
    IdentityViolation,
    InvalidIndex,
    MapViolation,
    MissingTableEntry,
    TargetMismatch,
    TruncationMismatch,
)

logger = logging.getLogger(__name__)

Table = tuple[int, ...]


class TruncatedSimplicialSet(BaseModel):
    """Cell tables of a simplicial set up to level ``N``."""

    model_config = ConfigDict(frozen=True)

    name: str = "X"
    N: int = Field(ge=1, description="Truncation level")
    sizes: tuple[int, ...] = Field(description="Number of cells per level")
    faces: tuple[tuple[Table, ...], ...] = Field(
        description="faces[n][i] is d_i on level n; faces[0] is empty"
    )
    degens: tuple[tuple[Table, ...], ...] = Field(
        description="degens[n][i] is s_i on level n; degens[N] is empty"
    )
    labels: tuple[tuple[Any, ...], ...] = Field(
        default=(), description="Optional human-readable name per cell"
    )

    _memo: dict = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _validate_tables(self) -> "TruncatedSimplicialSet":
        _check_shapes(self)
        _check_identities(self)
        return self

    # -- basic accessors -------------------------------------------------

    def cells(self, n: int) -> range:
        return range(self.sizes[n])

    def face(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def degen(self, n: int, i: int, x: int) -> int:
        return self.degens[n][i][x]

    def label(self, n: int, x: int) -> Any:
        if self.labels:
            return self.labels[n][x]
        return x

    def face_tuple(self, n: int, x: int) -> tuple[int, ...]:
        """All faces ``(d_0 x, ..., d_n x)`` of an ``n``-cell."""
        return tuple(self.faces[n][i][x] for i in range(n + 1))

    def boundary_index(self, n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Cells of level ``n`` grouped by their full face tuple."""
        key = ("boundary", n)
        if key not in self._memo:
            index: dict[tuple[int, ...], list[int]] = {}
            for x in self.cells(n):
                index.setdefault(self.face_tuple(n, x), []).append(x)
            self._memo[key] = {k: tuple(v) for k, v in index.items()}
        return self._memo[key]

    def single_face_index(self, n: int, i: int) -> dict[int, tuple[int, ...]]:
        """Cells of level ``n`` grouped by ``d_i``."""
        key = ("face", n, i)
        if key not in self._memo:
            index: dict[int, list[int]] = {}
            for x in self.cells(n):
                index.setdefault(self.faces[n][i][x], []).append(x)
            self._memo[key] = {k: tuple(v) for k, v in index.items()}
        return self._memo[key]

    def degeneracy_witness(self, n: int, x: int) -> Optional[tuple[int, int]]:
        """``(i, y)`` with ``x = s_i(y)`` and ``y = d_{i+1}(x)``, or None."""
        key = ("degenerate", n)
        if key not in self._memo:
            witnesses: list[Optional[tuple[int, int]]] = []
            for cell in self.cells(n):
                found = None
                for i in range(n):
                    y = self.faces[n][i + 1][cell]
                    if self.degens[n - 1][i][y] == cell:
                        found = (i, y)
                        break
                witnesses.append(found)
            self._memo[key] = tuple(witnesses)
        return self._memo[key][x]

    def nondegenerate(self, n: int) -> tuple[int, ...]:
        if n == 0:
            return tuple(self.cells(0))
        return tuple(x for x in self.cells(n) if self.degeneracy_witness(n, x) is None)

    def names(self, n: int) -> tuple[Any, ...]:
        """Labels of level ``n`` if they are distinct, else the cell ids."""
        if self.labels:
            level = self.labels[n]
            if len(set(level)) == len(level):
                return level
        return tuple(self.cells(n))

    def describe(self) -> str:
        return f"{self.name} (N={self.N}, levels {' '.join(map(str, self.sizes))})"


def _check_shapes(X: TruncatedSimplicialSet) -> None:
    if len(X.sizes) != X.N + 1:
        raise MissingTableEntry(f"expected {X.N + 1} level sizes, got {len(X.sizes)}")
    if len(X.faces) != X.N + 1 or len(X.degens) != X.N + 1:
        raise MissingTableEntry("face and degeneracy tables must cover levels 0..N")
    if X.labels and (
        len(X.labels) != X.N + 1
        or any(len(X.labels[n]) != X.sizes[n] for n in range(X.N + 1))
    ):
        raise MissingTableEntry("labels must name every cell")
    for n in range(X.N + 1):
        expected_faces = n + 1 if n >= 1 else 0
        if len(X.faces[n]) != expected_faces:
            raise MissingTableEntry(
                f"level {n} needs {expected_faces} face tables, got {len(X.faces[n])}"
            )
        for i, table in enumerate(X.faces[n]):
            _check_table(table, X.sizes[n], X.sizes[n - 1], f"d_{i} on level {n}")
        expected_degens = n + 1 if n < X.N else 0
        if len(X.degens[n]) != expected_degens:
            raise MissingTableEntry(
                f"level {n} needs {expected_degens} degeneracy tables, got {len(X.degens[n])}"
            )
        for i, table in enumerate(X.degens[n]):
            _check_table(table, X.sizes[n], X.sizes[n + 1], f"s_{i} on level {n}")


def _check_table(table: Table, domain: int, codomain: int, what: str) -> None:
    if len(table) != domain:
        raise MissingTableEntry(f"{what} has {len(table)} entries for {domain} cells")
    for x, value in enumerate(table):
        if not 0 <= value < codomain:
            raise MissingTableEntry(
                f"{what} sends cell {x} to {value}, outside 0..{codomain - 1}",
                witness={"cell": x, "value": value},
            )


def _check_identities(X: TruncatedSimplicialSet) -> None:
    F, S = X.faces, X.degens
    for n in range(X.N + 1):
        size = X.sizes[n]
        # d_i d_j = d_{j-1} d_i for i < j, on level n >= 2
        if n >= 2:
            for j in range(n + 1):
                for i in range(j):
                    lhs, rhs = F[n - 1][i], F[n - 1][j - 1]
                    dj, di = F[n][j], F[n][i]
                    for x in range(size):
                        if lhs[dj[x]] != rhs[di[x]]:
                            raise IdentityViolation(
                                n, f"d_{i} d_{j} = d_{j - 1} d_{i}", x
                            )
        # s_i s_j = s_{j+1} s_i for i <= j, starting from level n
        if n + 2 <= X.N:
            for j in range(n + 1):
                for i in range(j + 1):
                    for x in range(size):
                        if S[n + 1][i][S[n][j][x]] != S[n + 1][j + 1][S[n][i][x]]:
                            raise IdentityViolation(
                                n, f"s_{i} s_{j} = s_{j + 1} s_{i}", x
                            )
        # d_i s_j identities, starting from level n
        if n < X.N:
            for j in range(n + 1):
                sj = S[n][j]
                for i in range(n + 2):
                    di = F[n + 1][i]
                    for x in range(size):
                        value = di[sj[x]]
                        if i < j:
                            expected = S[n - 1][j - 1][F[n][i][x]]
                            name = f"d_{i} s_{j} = s_{j - 1} d_{i}"
                        elif i in (j, j + 1):
                            expected = x
                            name = f"d_{i} s_{j} = id"
                        else:
                            expected = S[n - 1][j][F[n][i - 1][x]]
                            name = f"d_{i} s_{j} = s_{j} d_{i - 1}"
                        if value != expected:
                            raise IdentityViolation(n, name, x)


def from_tables(
    N: int,
    sizes: Sequence[int],
    faces: Sequence[Sequence[Sequence[int]]],
    degens: Sequence[Sequence[Sequence[int]]],
    labels: Optional[Sequence[Sequence[Any]]] = None,
    name: str = "X",
) -> TruncatedSimplicialSet:
    """Build from integer tables (internal constructors use this)."""
    return TruncatedSimplicialSet(
        name=name,
        N=N,
        sizes=tuple(sizes),
        faces=tuple(tuple(tuple(t) for t in level) for level in faces),
        degens=tuple(tuple(tuple(t) for t in level) for level in degens),
        labels=tuple(tuple(level) for level in labels) if labels is not None else (),
    )


def build_truncated(
    N: int,
    cells: Sequence[Sequence[Hashable]],
    face_tables: Mapping[tuple[int, int], Mapping[Hashable, Hashable]],
    degen_tables: Mapping[tuple[int, int], Mapping[Hashable, Hashable]],
    name: str = "X",
) -> TruncatedSimplicialSet:
    """
    Validate cell and structure tables given by identifiers.

    Args:
        N: Truncation level
        cells: Per level, the ordered simplex identifiers
        face_tables: ``(n, i)`` -> mapping from level-``n`` ids to level ``n-1`` ids
        degen_tables: ``(n, i)`` -> mapping from level-``n`` ids to level ``n+1`` ids
        name: Display name

    Returns:
        The validated complex; identifiers become labels.

    Raises:
        MissingTableEntry: a table is absent or not total
        IdentityViolation: the first simplicial identity that fails
    """
    if len(cells) != N + 1:
        raise MissingTableEntry(f"expected cells for levels 0..{N}, got {len(cells)}")
    positions = []
    for n, level in enumerate(cells):
        index = {cell: k for k, cell in enumerate(level)}
        if len(index) != len(level):
            raise MissingTableEntry(f"duplicate identifiers on level {n}")
        positions.append(index)

    def convert(table_key, source_level, target_level, tables, kind):
        if table_key not in tables:
            raise MissingTableEntry(f"missing {kind} table {table_key}")
        table = tables[table_key]
        out = []
        for cell in cells[source_level]:
            if cell not in table:
                raise MissingTableEntry(
                    f"{kind} table {table_key} has no entry for {cell!r}",
                    witness={"table": list(table_key), "cell": repr(cell)},
                )
            image = table[cell]
            if image not in positions[target_level]:
                raise MissingTableEntry(
                    f"{kind} table {table_key} sends {cell!r} to unknown cell {image!r}",
                    witness={"table": list(table_key), "cell": repr(cell)},
                )
            out.append(positions[target_level][image])
        return out

    faces = [[]] + [
        [convert((n, i), n, n - 1, face_tables, "face") for i in range(n + 1)]
        for n in range(1, N + 1)
    ]
    degens = [
        [convert((n, i), n, n + 1, degen_tables, "degeneracy") for i in range(n + 1)]
        for n in range(N)
    ] + [[]]
    return from_tables(
        N, [len(level) for level in cells], faces, degens, labels=cells, name=name
    )


# -- simplicial operators ----------------------------------------------------


def apply_operator(
    X: TruncatedSimplicialSet, n: int, x: int, seq: Sequence[int]
) -> int:
    """
    Apply the operator of a monotone map ``[k] -> [n]`` to an ``n``-cell.

    ``seq`` lists the values of the map, so ``(0, 2)`` picks the edge between
    vertices 0 and 2 and ``(0, 0, 1)`` is ``s_0`` of an edge.
    """
    if not seq or any(b < a for a, b in zip(seq, seq[1:])):
        raise InvalidIndex(f"operator {tuple(seq)} is not monotone")
    if seq[0] < 0 or seq[-1] > n:
        raise InvalidIndex(f"operator {tuple(seq)} leaves [{n}]")
    image = sorted(set(seq))
    level, cell = n, x
    for v in range(n, -1, -1):
        if v not in image:
            cell = X.faces[level][v][cell]
            level -= 1
    rank = {v: k for k, v in enumerate(image)}
    pattern = [rank[v] for v in seq]
    for p in range(len(pattern) - 1):
        if pattern[p] == pattern[p + 1]:
            cell = X.degens[level][p][cell]
            level += 1
    return cell


def vertices(X: TruncatedSimplicialSet, n: int, x: int) -> tuple[int, ...]:
    return tuple(apply_operator(X, n, x, (k,)) for k in range(n + 1))


def iterated_degeneracy(X: TruncatedSimplicialSet, vertex: int, n: int) -> int:
    """The totally degenerate ``n``-cell on a vertex."""
    return apply_operator(X, 0, vertex, (0,) * (n + 1))


def is_degenerate(
    X: TruncatedSimplicialSet, n: int, x: int
) -> tuple[bool, Optional[tuple[int, int]]]:
    """Retraction test ``x = s_i(d_{i+1} x)``; returns the first witness ``(i, y)``."""
    if n < 1 or n > X.N:
        raise InvalidIndex(f"degeneracy test needs 1 <= n <= {X.N}, got {n}")
    witness = X.degeneracy_witness(n, x)
    return witness is not None, witness


def structurally_equal(A: TruncatedSimplicialSet, B: TruncatedSimplicialSet) -> bool:
    """Table equality, ignoring names and labels."""
    return (
        A.N == B.N
        and A.sizes == B.sizes
        and A.faces == B.faces
        and A.degens == B.degens
    )


def agree_up_to(A: TruncatedSimplicialSet, B: TruncatedSimplicialSet, n: int) -> bool:
    """Whether the two complexes have identical tables on levels 0..n."""
    if A.N < n or B.N < n:
        return False
    return (
        A.sizes[: n + 1] == B.sizes[: n + 1]
        and A.faces[: n + 1] == B.faces[: n + 1]
        and A.degens[:n] == B.degens[:n]
    )


# -- standard complexes --------------------------------------------------------


def _monotone_sequences(m: int, n: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(m + 1), n + 1))


def complex_from_sequences(
    levels: Sequence[Sequence[tuple]], N: int, name: str
) -> TruncatedSimplicialSet:
    """
    Complex whose ``n``-cells are vertex sequences closed under deletion and
    repetition; ``d_i`` drops entry ``i`` and ``s_i`` repeats it.
    """
    index = [{cell: k for k, cell in enumerate(level)} for level in levels]
    faces = [[]]
    for n in range(1, N + 1):
        faces.append(
            [[index[n - 1][cell[:i] + cell[i + 1 :]] for cell in levels[n]] for i in range(n + 1)]
        )
    degens = []
    for n in range(N):
        degens.append(
            [[index[n + 1][cell[: i + 1] + cell[i:]] for cell in levels[n]] for i in range(n + 1)]
        )
    degens.append([])
    return from_tables(N, [len(level) for level in levels], faces, degens, levels, name)


def standard_complex(
    kind: Literal["simplex", "boundary", "horn"], m: int, j: int = 0, N: Optional[int] = None
) -> TruncatedSimplicialSet:
    """
    Δ[m], ∂Δ[m] or Λ[m,j] truncated at ``N`` (default ``max(m, 1)``).

    Cells are non-decreasing sequences in ``[m]`` in lexicographic order.
    """
    if N is None:
        N = max(m, 1)
    if m < 0 or N < m or N < 1:
        raise InvalidIndex(f"need 0 <= m <= N and N >= 1, got m={m}, N={N}")
    if kind == "horn" and not 0 <= j <= m:
        raise InvalidIndex(f"horn index {j} outside 0..{m}")
    if kind not in ("simplex", "boundary", "horn"):
        raise InvalidIndex(f"unknown standard complex kind {kind!r}")
    full = set(range(m + 1))
    without_j = full - {j}

    def keep(seq: tuple[int, ...]) -> bool:
        if kind == "simplex":
            return True
        if kind == "boundary":
            return set(seq) != full
        return not without_j <= set(seq)

    levels = [[s for s in _monotone_sequences(m, n) if keep(s)] for n in range(N + 1)]
    name = {"simplex": f"Δ[{m}]", "boundary": f"∂Δ[{m}]", "horn": f"Λ[{m},{j}]"}[kind]
    return complex_from_sequences(levels, N, name)


def point(N: int = 4) -> TruncatedSimplicialSet:
    """The terminal complex: one cell per level."""
    return from_tables(
        N,
        [1] * (N + 1),
        [[]] + [[[0]] * (n + 1) for n in range(1, N + 1)],
        [[[0]] * (n + 1) for n in range(N)] + [[]],
        [["•"]] + [[("•",) * (n + 1)] for n in range(1, N + 1)],
        name="point",
    )


def empty(N: int = 1, name: str = "∅") -> TruncatedSimplicialSet:
    return from_tables(
        N,
        [0] * (N + 1),
        [[]] + [[[]] * (n + 1) for n in range(1, N + 1)],
        [[[]] * (n + 1) for n in range(N)] + [[]],
        name=name,
    )


# -- subcomplexes, truncation, products ---------------------------------------


def subcomplex(
    X: TruncatedSimplicialSet, keep: Sequence[Iterable[int]], name: Optional[str] = None
) -> tuple[TruncatedSimplicialSet, list[list[int]]]:
    """
    Restrict to a face- and degeneracy-closed family of cells.

    Returns the reindexed complex and, per level, the original ids of its cells.
    """
    kept = [sorted(set(level)) for level in keep]
    N = len(kept) - 1
    position = [{x: k for k, x in enumerate(level)} for level in kept]
    try:
        faces = [[]] + [
            [[position[n - 1][X.faces[n][i][x]] for x in kept[n]] for i in range(n + 1)]
            for n in range(1, N + 1)
        ]
        degens = [
            [[position[n + 1][X.degens[n][i][x]] for x in kept[n]] for i in range(n + 1)]
            for n in range(N)
        ] + [[]]
    except KeyError as e:
        raise MissingTableEntry(f"kept cells are not closed under structure maps: {e}")
    labels = [[X.label(n, x) for x in kept[n]] for n in range(N + 1)]
    sub = from_tables(N, [len(level) for level in kept], faces, degens, labels, name or X.name)
    return sub, kept


def truncate(X: TruncatedSimplicialSet, n: int) -> TruncatedSimplicialSet:
    if not 1 <= n <= X.N:
        raise InvalidIndex(f"cannot truncate level {X.N} complex at {n}")
    if n == X.N:
        return X
    sub, _ = subcomplex(X, [X.cells(k) for k in range(n + 1)], X.name)
    return sub


def skeleton(X: TruncatedSimplicialSet, n: int) -> TruncatedSimplicialSet:
    """Keep levels <= n; above n keep only iterated degeneracies of level n."""
    if not 0 <= n <= X.N:
        raise InvalidIndex(f"skeleton level {n} outside 0..{X.N}")
    keep: list[set[int]] = [set(X.cells(k)) for k in range(n + 1)]
    for k in range(n, X.N):
        keep.append({X.degens[k][i][x] for x in keep[k] for i in range(k + 1)})
    sub, _ = subcomplex(X, keep, f"sk_{n}({X.name})")
    return sub


def product(A: TruncatedSimplicialSet, B: TruncatedSimplicialSet) -> TruncatedSimplicialSet:
    """Level-wise product; cell ``(a, b)`` has id ``a * |B_n| + b``."""
    if A.N != B.N:
        raise TruncationMismatch(
            f"product needs equal truncation, got {A.N} and {B.N}",
            witness={"left": A.N, "right": B.N},
        )
    N = A.N
    sizes = [A.sizes[n] * B.sizes[n] for n in range(N + 1)]

    def combine(ta: Table, tb: Table, width: int) -> list[int]:
        return [a * width + b for a in ta for b in tb]

    faces = [[]] + [
        [combine(A.faces[n][i], B.faces[n][i], B.sizes[n - 1]) for i in range(n + 1)]
        for n in range(1, N + 1)
    ]
    degens = [
        [combine(A.degens[n][i], B.degens[n][i], B.sizes[n + 1]) for i in range(n + 1)]
        for n in range(N)
    ] + [[]]
    labels = [
        [(A.label(n, a), B.label(n, b)) for a in A.cells(n) for b in B.cells(n)]
        for n in range(N + 1)
    ]
    return from_tables(N, sizes, faces, degens, labels, f"{A.name}×{B.name}")


# -- simplicial maps -----------------------------------------------------------


class SimplicialMap(BaseModel):
    """Level-wise cell map commuting with faces (and degeneracies if ``full``)."""

    model_config = ConfigDict(frozen=True)

    name: str = "f"
    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    levels: tuple[Table, ...] = Field(description="levels[n][x] is the image of x")
    kind: Literal["full", "face_only"] = "full"

    @model_validator(mode="after")
    def _validate_map(self) -> "SimplicialMap":
        S, T = self.source, self.target
        depth = min(S.N, T.N)
        if len(self.levels) != depth + 1:
            raise MapViolation(
                f"map {self.name} must define levels 0..{depth}, got {len(self.levels)}"
            )
        for n, table in enumerate(self.levels):
            _check_table(table, S.sizes[n], T.sizes[n], f"level {n} of {self.name}")
        for n in range(1, depth + 1):
            for i in range(n + 1):
                for x in S.cells(n):
                    if self.levels[n - 1][S.faces[n][i][x]] != T.faces[n][i][self.levels[n][x]]:
                        raise MapViolation(
                            f"{self.name} does not commute with d_{i} on level {n}",
                            witness={"level": n, "face": i, "cell": x},
                        )
        if self.kind == "full":
            for n in range(depth):
                for i in range(n + 1):
                    for x in S.cells(n):
                        if self.levels[n + 1][S.degens[n][i][x]] != T.degens[n][i][self.levels[n][x]]:
                            raise MapViolation(
                                f"{self.name} does not commute with s_{i} on level {n}",
                                witness={"level": n, "degeneracy": i, "cell": x},
                            )
        return self

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def __call__(self, n: int, x: int) -> int:
        return self.levels[n][x]


def identity_map(X: TruncatedSimplicialSet) -> SimplicialMap:
    return SimplicialMap(
        name=f"id_{X.name}", source=X, target=X, levels=tuple(tuple(X.cells(n)) for n in range(X.N + 1))
    )


def constant_map(
    X: TruncatedSimplicialSet, Y: TruncatedSimplicialSet, vertex: int
) -> SimplicialMap:
    """Every cell of X goes to the totally degenerate cell on ``vertex``."""
    depth = min(X.N, Y.N)
    levels = [
        tuple([iterated_degeneracy(Y, vertex, n)] * X.sizes[n]) for n in range(depth + 1)
    ]
    return SimplicialMap(name=f"const_{vertex}", source=X, target=Y, levels=tuple(levels))


def compose(f: SimplicialMap, g: SimplicialMap, name: Optional[str] = None) -> SimplicialMap:
    """``g ∘ f`` (first f, then g), defined up to the smaller depth."""
    depth = min(f.depth, g.depth)
    if not agree_up_to(f.target, g.source, depth):
        raise TargetMismatch(
            f"cannot compose {f.name}: {f.source.name} → {f.target.name} "
            f"with {g.name}: {g.source.name} → {g.target.name}"
        )
    source = f.source if f.source.N == depth else truncate(f.source, depth)
    levels = [tuple(g.levels[n][y] for y in f.levels[n]) for n in range(depth + 1)]
    kind = "full" if f.kind == g.kind == "full" else "face_only"
    return SimplicialMap(
        name=name or f"{g.name}∘{f.name}",
        source=source,
        target=g.target,
        levels=tuple(levels),
        kind=kind,
    )


def fiber_product(
    f: SimplicialMap, g: SimplicialMap, name: Optional[str] = None
) -> tuple[TruncatedSimplicialSet, SimplicialMap, SimplicialMap]:
    """
    ``A ×_C B`` for ``f: A → C`` and ``g: B → C``.

    Cells are pairs agreeing in C, ordered lexicographically; returns the
    complex and the two projections.
    """
    N = min(f.depth, g.depth)
    if not agree_up_to(f.target, g.target, N):
        raise TargetMismatch(
            f"fiber product needs a common target, got {f.target.name} and {g.target.name}"
        )
    if f.kind != "full" or g.kind != "full":
        raise MapViolation("fiber product needs full simplicial maps")
    A, B = f.source, g.source
    pairs: list[list[tuple[int, int]]] = []
    for n in range(N + 1):
        over: dict[int, list[int]] = {}
        for b in B.cells(n):
            over.setdefault(g.levels[n][b], []).append(b)
        pairs.append([(a, b) for a in A.cells(n) for b in over.get(f.levels[n][a], ())])
    position = [{p: k for k, p in enumerate(level)} for level in pairs]
    faces = [[]] + [
        [[position[n - 1][(A.faces[n][i][a], B.faces[n][i][b])] for a, b in pairs[n]] for i in range(n + 1)]
        for n in range(1, N + 1)
    ]
    degens = [
        [[position[n + 1][(A.degens[n][i][a], B.degens[n][i][b])] for a, b in pairs[n]] for i in range(n + 1)]
        for n in range(N)
    ] + [[]]
    labels = [[(A.label(n, a), B.label(n, b)) for a, b in pairs[n]] for n in range(N + 1)]
    P = from_tables(
        N, [len(level) for level in pairs], faces, degens, labels, name or f"{A.name}×_{f.target.name}{B.name}"
    )
    A_trunc = A if A.N == N else truncate(A, N)
    B_trunc = B if B.N == N else truncate(B, N)
    pr1 = SimplicialMap(
        name="pr1", source=P, target=A_trunc, levels=tuple(tuple(a for a, _ in level) for level in pairs)
    )
    pr2 = SimplicialMap(
        name="pr2", source=P, target=B_trunc, levels=tuple(tuple(b for _, b in level) for level in pairs)
    )
    logger.debug(f"Fiber product {P.describe()}")
    return P, pr1, pr2
