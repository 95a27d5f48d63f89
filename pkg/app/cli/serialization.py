"""
Line-oriented interchange format.

A document is a sequence of blocks. Each block starts with a header
``[kind name] key=value ...`` and continues with ``key: value`` lines;
``#`` starts a comment. Kinds:

    [group NAME]            elements:, mul: a b → c, ...
    [groupoid NAME]         objects:, arrows: id src tgt, ..., compose: a b → c, ...,
                            optional inv: a→b ... and unit: x→a ...
    [crossed_module NAME]   H.elements:, H.mul:, G.elements:, G.mul:, bnd: h→g ...,
                            act: g h → h′, ...
    [sset NAME] N=<int>     levels = ..., cells n: ..., face n i: x→y ..., degen n i: ...
    [action NAME]           groupoid: NAME, group: NAME or crossed_module: NAME,
                            phi g objects: x→y ..., phi g arrows: a→b ..., theta h: x→a ...
    [map NAME] from=A to=B  level n: x→y ...

References are resolved by name within a kind, in any order. ``->`` is
accepted for ``→``. Serialization is canonical: blocks are sorted by kind and
name, cells are written in id order, and labels are made into safe tokens.
"""

import logging
import re
from typing import Any, Callable, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from app.actions.strict import StrictAction
from app.errors import DocumentValidationError, MissingTableEntry, ParseError, ToolkitError
from app.groupoids.groupoid_bridge import FiniteGroupoid, groupoid_from_composition
from app.groupoids.groups import FiniteGroup
from app.groupoids.two_group import CrossedModule
from app.simplicial.core import SimplicialMap, TruncatedSimplicialSet, build_truncated

logger = logging.getLogger(__name__)

Value = Union[TruncatedSimplicialSet, FiniteGroup, FiniteGroupoid, CrossedModule, StrictAction, SimplicialMap]

BLOCK_ORDER = ("group", "groupoid", "crossed_module", "sset", "action", "map")

_HEADER = re.compile(r"\[(?P<kind>[a-z_]+)\s+(?P<name>[^\]\s]+)\s*\](?P<attrs>.*)")
_TOKEN = re.compile(r"→|,|[^\s,→]+")
_UNSAFE = re.compile(r"->|[\s,→#\[\]=:]")

Token = tuple[str, int]


class Line(BaseModel):
    number: int
    key: str
    value: str
    column: int = Field(description="1-based column where the value starts")


class Block(BaseModel):
    kind: str
    name: str
    line: int
    attrs: dict[str, str] = Field(default_factory=dict)
    body: list[Line] = Field(default_factory=list)

    def lines(self, key: str) -> list[Line]:
        return [line for line in self.body if line.key == key]

    def one(self, key: str, required: bool = True) -> Optional[Line]:
        found = self.lines(key)
        if len(found) > 1:
            raise ParseError(found[1].number, 1, f"a single '{key}:' line in block {self.name}")
        if not found:
            if required:
                raise ParseError(self.line, 1, f"a '{key}:' line in block {self.name}")
            return None
        return found[0]

    def reference(self, key: str, required: bool = True) -> Optional[str]:
        """A name given as ``key=NAME`` in the header or ``key: NAME`` in the body."""
        if key in self.attrs:
            return self.attrs[key]
        line = self.one(key, required)
        if line is None:
            return None
        words = _words(line)
        if len(words) != 1:
            raise ParseError(line.number, line.column, f"one block name after '{key}:'")
        return words[0][0]


class ParsedBlock(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: str
    name: str
    line: int
    value: Any


class ParsedDocument(BaseModel):
    """Values of a document in the order their blocks appear."""

    blocks: list[ParsedBlock]

    def last(self) -> Value:
        return self.blocks[-1].value

    def get(self, kind: str, name: Optional[str] = None) -> Optional[Value]:
        for block in reversed(self.blocks):
            if block.kind == kind and (name is None or block.name == name):
                return block.value
        return None

    def of_kind(self, kind: str) -> list[Value]:
        return [b.value for b in self.blocks if b.kind == kind]


# -- lexing ------------------------------------------------------------------------


def split_blocks(text: str) -> list[Block]:
    """First pass: headers, attributes and raw body lines."""
    blocks: list[Block] = []
    current: Optional[Block] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        stripped = content.lstrip()
        if not stripped:
            continue
        indent = len(content) - len(stripped)
        if stripped.startswith("["):
            match = _HEADER.fullmatch(stripped)
            if match is None:
                raise ParseError(number, indent + 1, "a block header '[kind name] key=value ...'")
            if match["kind"] not in BLOCK_ORDER:
                raise ParseError(number, indent + 2, f"a block kind among {', '.join(BLOCK_ORDER)}")
            attrs = {}
            offset = indent + match.start("attrs")
            for attr in re.finditer(r"\S+", match["attrs"]):
                key, sep, value = attr.group().partition("=")
                if not sep or not key or not value:
                    raise ParseError(number, offset + attr.start() + 1, "a key=value attribute")
                attrs[key] = value
            current = Block(kind=match["kind"], name=match["name"], line=number, attrs=attrs)
            blocks.append(current)
            continue
        if current is None:
            raise ParseError(number, indent + 1, "a block header before any content")
        if stripped.startswith("levels") and "=" in stripped and ":" not in stripped:
            sep = content.index("=")
        elif ":" in stripped:
            sep = content.index(":")
        else:
            raise ParseError(number, indent + 1, "'key: value'")
        key = " ".join(content[:sep].split())
        if not key:
            raise ParseError(number, indent + 1, "'key: value'")
        current.body.append(Line(number=number, key=key, value=content[sep + 1 :], column=sep + 2))
    if not blocks:
        raise ParseError(1, 1, "at least one block")
    return blocks


def _tokens(line: Line) -> list[Token]:
    text = line.value.replace("->", " →")
    return [(m.group(), line.column + m.start()) for m in _TOKEN.finditer(text)]


def _words(line: Line) -> list[Token]:
    words = [t for t in _tokens(line) if t[0] != ","]
    for word, column in words:
        if word == "→":
            raise ParseError(line.number, column, "identifiers without →")
    return words


def _entries(line: Line, arity: int) -> list[tuple[list[Token], Token]]:
    """``a₁ … a_arity → b`` entries separated by commas or whitespace."""
    tokens = _tokens(line)
    end = line.column + len(line.value)
    out = []
    k = 0
    while k < len(tokens):
        if tokens[k][0] == ",":
            k += 1
            continue
        lhs = tokens[k : k + arity]
        if len(lhs) < arity or any(t in ("→", ",") for t, _ in lhs):
            raise ParseError(line.number, tokens[k][1], f"{arity} identifier(s) before →")
        k += arity
        if k >= len(tokens) or tokens[k][0] != "→":
            raise ParseError(line.number, tokens[k][1] if k < len(tokens) else end, "→")
        k += 1
        if k >= len(tokens) or tokens[k][0] in ("→", ","):
            raise ParseError(line.number, tokens[k][1] if k < len(tokens) else end, "an identifier after →")
        out.append((lhs, tokens[k]))
        k += 1
    return out


def _int(text: str, number: int, column: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(number, column, what)


def _positions(words: list[Token], line: Line, what: str) -> dict[str, int]:
    index: dict[str, int] = {}
    for word, column in words:
        if word in index:
            raise ParseError(line.number, column, f"distinct {what} identifiers")
        index[word] = len(index)
    return index


def _lookup(index: dict[str, int], token: Token, line: Line, what: str) -> int:
    try:
        return index[token[0]]
    except KeyError:
        raise ParseError(line.number, token[1], f"a known {what}, got {token[0]!r}")


# -- builders ------------------------------------------------------------------------


def _group_from(block: Block, prefix: str, name: str) -> FiniteGroup:
    line = block.one(prefix + "elements")
    words = _words(line)
    index = _positions(words, line, "element")
    n = len(index)
    table: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
    for mul in block.lines(prefix + "mul"):
        for (a, b), c in _entries(mul, 2):
            table[_lookup(index, a, mul, "element")][_lookup(index, b, mul, "element")] = _lookup(
                index, c, mul, "element"
            )
    for a in range(n):
        for b in range(n):
            if table[a][b] is None:
                raise MissingTableEntry(
                    f"{prefix}mul has no entry for {words[a][0]} {words[b][0]}",
                    witness={"left": words[a][0], "right": words[b][0]},
                )
    return FiniteGroup(name=name, elements=tuple(w for w, _ in words), table=tuple(tuple(r) for r in table))


def _build_group(builder: "_Builder", block: Block) -> FiniteGroup:
    return _group_from(block, "", block.name)


def _build_groupoid(builder: "_Builder", block: Block) -> FiniteGroupoid:
    line = block.one("objects")
    objects = _positions(_words(line), line, "object")
    arrow_line_words: list[tuple[Line, list[Token]]] = [(a, _words(a)) for a in block.lines("arrows")]
    if not arrow_line_words:
        raise ParseError(block.line, 1, f"an 'arrows:' line in block {block.name}")
    arrows: dict[str, int] = {}
    src, tgt = [], []
    for arrow_line, words in arrow_line_words:
        if len(words) % 3:
            raise ParseError(arrow_line.number, arrow_line.column, "arrow entries 'id src tgt'")
        for k in range(0, len(words), 3):
            ident, s, t = words[k : k + 3]
            if ident[0] in arrows:
                raise ParseError(arrow_line.number, ident[1], "distinct arrow identifiers")
            arrows[ident[0]] = len(arrows)
            src.append(_lookup(objects, s, arrow_line, "object"))
            tgt.append(_lookup(objects, t, arrow_line, "object"))
    comp = {}
    for compose in block.lines("compose"):
        for (a, b), c in _entries(compose, 2):
            comp[(_lookup(arrows, a, compose, "arrow"), _lookup(arrows, b, compose, "arrow"))] = _lookup(
                arrows, c, compose, "arrow"
            )
    inv_line, unit_line = block.one("inv", required=False), block.one("unit", required=False)
    if inv_line is None or unit_line is None:
        return groupoid_from_composition(block.name, list(objects), list(arrows), src, tgt, comp)
    inv = [None] * len(arrows)
    for (a,), b in _entries(inv_line, 1):
        inv[_lookup(arrows, a, inv_line, "arrow")] = _lookup(arrows, b, inv_line, "arrow")
    unit = [None] * len(objects)
    for (x,), a in _entries(unit_line, 1):
        unit[_lookup(objects, x, unit_line, "object")] = _lookup(arrows, a, unit_line, "arrow")
    if None in inv or None in unit:
        raise MissingTableEntry(f"groupoid {block.name} lacks an inverse or unit entry")
    return FiniteGroupoid(
        name=block.name,
        objects=tuple(objects),
        arrows=tuple(arrows),
        src=tuple(src),
        tgt=tuple(tgt),
        comp=comp,
        inv=tuple(inv),
        unit=tuple(unit),
    )


def _build_crossed_module(builder: "_Builder", block: Block) -> CrossedModule:
    names = {}
    for prefix in ("H", "G"):
        line = block.one(f"{prefix}.name", required=False)
        names[prefix] = _words(line)[0][0] if line is not None and _words(line) else prefix
    H = _group_from(block, "H.", names["H"])
    G = _group_from(block, "G.", names["G"])
    h_index = {e: k for k, e in enumerate(H.elements)}
    g_index = {e: k for k, e in enumerate(G.elements)}
    bnd_line = block.one("bnd")
    bnd = [None] * H.order
    for (h,), g in _entries(bnd_line, 1):
        bnd[_lookup(h_index, h, bnd_line, "element of H")] = _lookup(g_index, g, bnd_line, "element of G")
    act = [[None] * H.order for _ in range(G.order)]
    for line in block.lines("act"):
        for (g, h), image in _entries(line, 2):
            act[_lookup(g_index, g, line, "element of G")][_lookup(h_index, h, line, "element of H")] = _lookup(
                h_index, image, line, "element of H"
            )
    if None in bnd or any(None in row for row in act):
        raise MissingTableEntry(f"crossed module {block.name} lacks a bnd or act entry")
    return CrossedModule(name=block.name, H=H, G=G, bnd=tuple(bnd), act=tuple(tuple(r) for r in act))


def _build_sset(builder: "_Builder", block: Block) -> TruncatedSimplicialSet:
    if "N" not in block.attrs:
        raise ParseError(block.line, 1, "an N=<int> attribute on the sset header")
    N = _int(block.attrs["N"], block.line, 1, "an integer truncation level")
    cells: list[Optional[list[str]]] = [None] * (N + 1)
    face_tables: dict[tuple[int, int], dict[str, str]] = {}
    degen_tables: dict[tuple[int, int], dict[str, str]] = {}
    declared_sizes = None
    for line in block.body:
        head = line.key.split()
        if head == ["levels"]:
            declared_sizes = [_int(w, line.number, c, "an integer level size") for w, c in _words(line)]
        elif len(head) == 2 and head[0] == "cells":
            n = _int(head[1], line.number, 1, "a level number")
            if not 0 <= n <= N:
                raise ParseError(line.number, 1, f"a level in 0..{N}")
            cells[n] = [w for w, _ in _words(line)]
        elif len(head) == 3 and head[0] in ("face", "degen"):
            n = _int(head[1], line.number, 1, "a level number")
            i = _int(head[2], line.number, 1, "a structure map index")
            tables = face_tables if head[0] == "face" else degen_tables
            tables[(n, i)] = {a[0][0]: b[0] for a, b in _entries(line, 1)}
        else:
            raise ParseError(line.number, 1, "'levels =', 'cells n:', 'face n i:' or 'degen n i:'")
    for n, level in enumerate(cells):
        if level is None:
            raise ParseError(block.line, 1, f"a 'cells {n}:' line in block {block.name}")
    if declared_sizes is not None and declared_sizes != [len(level) for level in cells]:
        raise ParseError(block.line, 1, f"level sizes {declared_sizes} to match the listed cells")
    return build_truncated(N, cells, face_tables, degen_tables, name=block.name)


def _build_action(builder: "_Builder", block: Block) -> StrictAction:
    X = builder.get("groupoid", block.reference("groupoid"), block)
    group_name = block.reference("group", required=False)
    xm_name = block.reference("crossed_module", required=False)
    if (group_name is None) == (xm_name is None):
        raise ParseError(block.line, 1, f"exactly one of group or crossed_module in block {block.name}")
    XM = builder.get("crossed_module", xm_name, block) if xm_name is not None else None
    G = XM.G if XM is not None else builder.get("group", group_name, block)
    o_index = {x: k for k, x in enumerate(X.objects)}
    a_index = {a: k for k, a in enumerate(X.arrows)}
    g_index = {g: k for k, g in enumerate(G.elements)}
    phi_o = [[None] * len(X.objects) for _ in range(G.order)]
    phi_a = [[None] * len(X.arrows) for _ in range(G.order)]
    theta = None
    for line in block.body:
        head = line.key.split()
        if head[0] == "phi" and len(head) == 3 and head[2] in ("objects", "arrows"):
            g = _lookup(g_index, (head[1], 1), line, "group element")
            rows, index = (phi_o, o_index) if head[2] == "objects" else (phi_a, a_index)
            for (a,), b in _entries(line, 1):
                rows[g][_lookup(index, a, line, head[2][:-1])] = _lookup(index, b, line, head[2][:-1])
        elif head[0] == "theta" and len(head) == 2:
            if XM is None:
                raise ParseError(line.number, 1, "theta lines only in crossed-module actions")
            h_index = {h: k for k, h in enumerate(XM.H.elements)}
            if theta is None:
                theta = [[None] * len(X.objects) for _ in range(XM.H.order)]
            h = _lookup(h_index, (head[1], 1), line, "element of H")
            for (x,), a in _entries(line, 1):
                theta[h][_lookup(o_index, x, line, "object")] = _lookup(a_index, a, line, "arrow")
        elif head[0] not in ("groupoid", "group", "crossed_module"):
            raise ParseError(line.number, 1, "'phi g objects:', 'phi g arrows:' or 'theta h:'")
    if any(None in row for row in phi_o + phi_a) or (theta is not None and any(None in r for r in theta)):
        raise MissingTableEntry(f"action {block.name} lacks a phi or theta entry")
    return StrictAction(
        name=block.name,
        groupoid=X,
        group=None if XM is not None else G,
        crossed_module=XM,
        phi_objects=tuple(tuple(r) for r in phi_o),
        phi_arrows=tuple(tuple(r) for r in phi_a),
        theta=tuple(tuple(r) for r in theta) if theta is not None else None,
    )


def _build_map(builder: "_Builder", block: Block) -> SimplicialMap:
    for key in ("from", "to"):
        if key not in block.attrs:
            raise ParseError(block.line, 1, f"a {key}=<sset> attribute on the map header")
    S = builder.get("sset", block.attrs["from"], block)
    T = builder.get("sset", block.attrs["to"], block)
    depth = min(S.N, T.N)
    s_index = [{str(S.label(n, x)): x for x in S.cells(n)} for n in range(S.N + 1)]
    t_index = [{str(T.label(n, y)): y for y in T.cells(n)} for n in range(T.N + 1)]
    levels: list[Optional[list[Optional[int]]]] = [None] * (depth + 1)
    for line in block.body:
        head = line.key.split()
        if len(head) != 2 or head[0] != "level":
            raise ParseError(line.number, 1, "'level n:'")
        n = _int(head[1], line.number, 1, "a level number")
        if not 0 <= n <= depth:
            raise ParseError(line.number, 1, f"a level in 0..{depth}")
        table = [None] * S.sizes[n]
        for (x,), y in _entries(line, 1):
            table[_lookup(s_index[n], x, line, "source cell")] = _lookup(t_index[n], y, line, "target cell")
        levels[n] = table
    if any(level is None or None in level for level in levels):
        raise MissingTableEntry(f"map {block.name} must define every cell on levels 0..{depth}")
    return SimplicialMap(
        name=block.name,
        source=S,
        target=T,
        levels=tuple(tuple(level) for level in levels),
        kind=block.attrs.get("kind", "full"),
    )


_BUILDERS: dict[str, Callable[["_Builder", Block], Value]] = {
    "group": _build_group,
    "groupoid": _build_groupoid,
    "crossed_module": _build_crossed_module,
    "sset": _build_sset,
    "action": _build_action,
    "map": _build_map,
}


class _Builder:
    """Second pass: builds blocks on demand so references may point forward."""

    def __init__(self, blocks: list[Block]):
        self.blocks: dict[tuple[str, str], Block] = {}
        for block in blocks:
            key = (block.kind, block.name)
            if key in self.blocks:
                raise ParseError(block.line, 1, f"a unique name for {block.kind} block {block.name}")
            self.blocks[key] = block
        self.values: dict[tuple[str, str], Value] = {}
        self.pending: set[tuple[str, str]] = set()

    def get(self, kind: str, name: str, referrer: Optional[Block] = None) -> Value:
        key = (kind, name)
        if key not in self.blocks:
            line = referrer.line if referrer is not None else 1
            raise ParseError(line, 1, f"a {kind} block named {name}")
        if key in self.values:
            return self.values[key]
        block = self.blocks[key]
        if key in self.pending:
            raise ParseError(block.line, 1, f"references without a cycle through {name}")
        self.pending.add(key)
        try:
            value = _BUILDERS[kind](self, block)
        except (ParseError, DocumentValidationError):
            raise
        except ToolkitError as e:
            raise DocumentValidationError(block.name, e, block.line)
        except ValidationError as e:
            first = e.errors()[0]
            cause = ToolkitError(f"{'.'.join(map(str, first['loc']))}: {first['msg']}")
            raise DocumentValidationError(block.name, cause, block.line)
        self.pending.discard(key)
        self.values[key] = value
        return value


def parse_all(text: str) -> ParsedDocument:
    """
    Parse every block of a document.

    Raises:
        ParseError: the text does not follow the grammar
        DocumentValidationError: a block violates the invariants of its value
    """
    blocks = split_blocks(text)
    builder = _Builder(blocks)
    parsed = [
        ParsedBlock(kind=b.kind, name=b.name, line=b.line, value=builder.get(b.kind, b.name)) for b in blocks
    ]
    logger.debug(f"Parsed {len(parsed)} blocks")
    return ParsedDocument(blocks=parsed)


def parse(text: str) -> Value:
    """The value of the last block; earlier blocks serve as references."""
    return parse_all(text).last()


# -- serialization -------------------------------------------------------------------


def safe_token(label: Any) -> str:
    text = "|".join(map(str, label)) if isinstance(label, tuple) else str(label)
    text = _UNSAFE.sub("_", text)
    return text or "_"


def _tokens_for(labels: list[Any], prefix: str) -> list[str]:
    tokens = [safe_token(v) for v in labels]
    if len(set(tokens)) != len(tokens):
        return [f"{prefix}{k}" for k in range(len(labels))]
    return tokens


def sset_tokens(X: TruncatedSimplicialSet) -> list[list[str]]:
    return [_tokens_for([X.label(n, x) for x in X.cells(n)], f"c{n}_") for n in range(X.N + 1)]


def _mapping(pairs: list[tuple[str, str]]) -> str:
    return " ".join(f"{a}→{b}" for a, b in pairs)


def _render_sset(X: TruncatedSimplicialSet, name: str) -> list[str]:
    tok = sset_tokens(X)
    lines = [f"[sset {name}] N={X.N}", f"levels = {' '.join(map(str, X.sizes))}"]
    lines += [f"cells {n}: {' '.join(tok[n])}".rstrip() for n in range(X.N + 1)]
    for n in range(1, X.N + 1):
        for i in range(n + 1):
            pairs = [(tok[n][x], tok[n - 1][X.faces[n][i][x]]) for x in X.cells(n)]
            lines.append(f"face {n} {i}: {_mapping(pairs)}".rstrip())
    for n in range(X.N):
        for i in range(n + 1):
            pairs = [(tok[n][x], tok[n + 1][X.degens[n][i][x]]) for x in X.cells(n)]
            lines.append(f"degen {n} {i}: {_mapping(pairs)}".rstrip())
    return lines


def _group_lines(G: FiniteGroup, prefix: str) -> list[str]:
    el = _tokens_for(list(G.elements), "g")
    lines = [f"{prefix}elements: {' '.join(el)}"]
    for a in range(G.order):
        entries = ", ".join(f"{el[a]} {el[b]} → {el[G.mul(a, b)]}" for b in range(G.order))
        lines.append(f"{prefix}mul: {entries}")
    return lines


def _render_group(G: FiniteGroup, name: str) -> list[str]:
    return [f"[group {name}]"] + _group_lines(G, "")


def _render_groupoid(X: FiniteGroupoid, name: str) -> list[str]:
    ob = _tokens_for(list(X.objects), "x")
    ar = _tokens_for(list(X.arrows), "a")
    lines = [f"[groupoid {name}]", f"objects: {' '.join(ob)}"]
    lines.append("arrows: " + ", ".join(f"{ar[a]} {ob[X.src[a]]} {ob[X.tgt[a]]}" for a in range(len(ar))))
    for a in range(len(ar)):
        entries = [f"{ar[a]} {ar[b]} → {ar[X.comp[(a, b)]]}" for b in range(len(ar)) if (a, b) in X.comp]
        if entries:
            lines.append("compose: " + ", ".join(entries))
    lines.append("inv: " + _mapping([(ar[a], ar[X.inv[a]]) for a in range(len(ar))]))
    lines.append("unit: " + _mapping([(ob[x], ar[X.unit[x]]) for x in range(len(ob))]))
    return lines


def _render_crossed_module(XM: CrossedModule, name: str) -> list[str]:
    lines = [f"[crossed_module {name}]", f"H.name: {safe_token(XM.H.name)}"]
    lines += _group_lines(XM.H, "H.")
    lines.append(f"G.name: {safe_token(XM.G.name)}")
    lines += _group_lines(XM.G, "G.")
    h_tok = _tokens_for(list(XM.H.elements), "g")
    g_tok = _tokens_for(list(XM.G.elements), "g")
    lines.append("bnd: " + _mapping([(h_tok[h], g_tok[XM.bnd[h]]) for h in range(XM.H.order)]))
    for g in range(XM.G.order):
        entries = ", ".join(f"{g_tok[g]} {h_tok[h]} → {h_tok[XM.act[g][h]]}" for h in range(XM.H.order))
        lines.append(f"act: {entries}")
    return lines


class _Emitter:
    """Collects rendered blocks; renames on clashes of kind and name."""

    def __init__(self):
        self.blocks: dict[tuple[str, str], list[str]] = {}

    def place(self, kind: str, name: str, render: Callable[[str], list[str]]) -> str:
        name = safe_token(name)
        lines = render(name)
        while (kind, name) in self.blocks and self.blocks[(kind, name)] != lines:
            name += "'"
            lines = render(name)
        self.blocks[(kind, name)] = lines
        return name

    def emit(self, value: Value) -> str:
        if isinstance(value, TruncatedSimplicialSet):
            return self.place("sset", value.name, lambda n: _render_sset(value, n))
        if isinstance(value, FiniteGroup):
            return self.place("group", value.name, lambda n: _render_group(value, n))
        if isinstance(value, FiniteGroupoid):
            return self.place("groupoid", value.name, lambda n: _render_groupoid(value, n))
        if isinstance(value, CrossedModule):
            return self.place("crossed_module", value.name, lambda n: _render_crossed_module(value, n))
        if isinstance(value, StrictAction):
            return self._emit_action(value)
        if isinstance(value, SimplicialMap):
            return self._emit_map(value)
        raise TypeError(f"cannot serialize {type(value).__name__}")

    def _emit_action(self, A: StrictAction) -> str:
        X = A.groupoid
        groupoid = self.emit(X)
        ref = f"crossed_module: {self.emit(A.crossed_module)}" if A.is_two_group else f"group: {self.emit(A.group)}"
        ob = _tokens_for(list(X.objects), "x")
        ar = _tokens_for(list(X.arrows), "a")
        el = _tokens_for(list(A.G.elements), "g")

        def render(name: str) -> list[str]:
            lines = [f"[action {name}]", f"groupoid: {groupoid}", ref]
            for g in range(A.G.order):
                objects = _mapping([(ob[x], ob[y]) for x, y in enumerate(A.phi_objects[g])])
                arrows = _mapping([(ar[a], ar[b]) for a, b in enumerate(A.phi_arrows[g])])
                lines.append(f"phi {el[g]} objects: {objects}")
                lines.append(f"phi {el[g]} arrows: {arrows}")
            if A.theta is not None:
                h_tok = _tokens_for(list(A.crossed_module.H.elements), "g")
                for h, row in enumerate(A.theta):
                    lines.append(f"theta {h_tok[h]}: " + _mapping([(ob[x], ar[a]) for x, a in enumerate(row)]))
            return lines

        return self.place("action", A.name, render)

    def _emit_map(self, f: SimplicialMap) -> str:
        source = self.emit(f.source)
        target = self.emit(f.target)
        s_tok, t_tok = sset_tokens(f.source), sset_tokens(f.target)

        def render(name: str) -> list[str]:
            kind = " kind=face_only" if f.kind == "face_only" else ""
            lines = [f"[map {name}] from={source} to={target}{kind}"]
            for n, level in enumerate(f.levels):
                lines.append(f"level {n}: " + _mapping([(s_tok[n][x], t_tok[n][y]) for x, y in enumerate(level)]))
            return [line.rstrip() for line in lines]

        return self.place("map", f.name, render)

    def text(self) -> str:
        ordered = sorted(self.blocks.items(), key=lambda kv: (BLOCK_ORDER.index(kv[0][0]), kv[0][1]))
        return "\n\n".join("\n".join(lines) for _, lines in ordered) + "\n"


def serialize(*values: Value) -> str:
    """Canonical text of one or more values and everything they reference."""
    emitter = _Emitter()
    for value in values:
        emitter.emit(value)
    return emitter.text()
