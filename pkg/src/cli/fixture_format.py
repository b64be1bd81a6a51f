"""
Reading and writing fixture documents.

A fixture document is line-oriented UTF-8 text.  The first significant line
is the version header, followed by the field, the grading group and any
number of named sections, each closed by ``end``::

    format zalg-fixture 1
    field fp:5
    group integers

    algebra A
      window 0..2
      basis 0 1
      basis 1 x y
      basis 2 x^2 x*y y^2
      unit 1
      mul 0 0 0 0 0=1
      ...
    end

Tokens are separated by whitespace; ``#`` starts a comment; a token holding
whitespace is written in double quotes.  Printing is canonical (sections
grouped by kind and sorted by name, entries in window and index order,
scalars normalized), so parse(print(parse(text))) == parse(text).

See docs/FIXTURE_FORMAT.md for the full grammar.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from pathlib import Path
from typing import Any, Callable, Iterable

from src.endo.modules import BigradedModule, Summand
from src.foundations import linalg
from src.foundations.errors import FixtureParseError, UnknownElement, ZalgError
from src.foundations.fields import FieldSpec
from src.foundations.groups import DegreeWindow, GradingGroup, IndexWindow, group_op
from src.galgebra.morphism import GAlgebraMorphism
from src.galgebra.principal import PrincipalMap
from src.galgebra.window import (
    GAlgebraWindow,
    Side,
    associated_g_algebra,
    associated_left_g_algebra,
)
from src.graded.algebra import GradedAlgebra
from src.graded.maps import GradedLinearMap
from src.twisting.system import TwistingSystem, sigma_power_system

logger = logging.getLogger(__name__)

HEADER = ("format", "zalg-fixture", "1")

# Section keyword -> document attribute, in printing order.
SECTIONS = {
    "algebra": "algebras",
    "map": "maps",
    "galgebra": "g_algebras",
    "morphism": "morphisms",
    "twist": "systems",
    "principal": "principal_maps",
    "module": "modules",
}


@dataclass(eq=False)
class FixtureDocument:
    """Named objects over one field and one grading group."""

    field: FieldSpec
    group: GradingGroup
    algebras: dict[str, GradedAlgebra] = dataclass_field(default_factory=dict)
    maps: dict[str, GradedLinearMap] = dataclass_field(default_factory=dict)
    g_algebras: dict[str, GAlgebraWindow] = dataclass_field(default_factory=dict)
    morphisms: dict[str, GAlgebraMorphism] = dataclass_field(default_factory=dict)
    systems: dict[str, TwistingSystem] = dataclass_field(default_factory=dict)
    principal_maps: dict[str, PrincipalMap] = dataclass_field(default_factory=dict)
    modules: dict[str, BigradedModule] = dataclass_field(default_factory=dict)

    def names(self) -> dict[str, str]:
        """Every object name mapped to its section keyword."""
        out = {}
        for keyword, attr in SECTIONS.items():
            for name in getattr(self, attr):
                out[name] = keyword
        return out

    def pick(self, keyword: str, name: str | None = None) -> Any:
        """
        The object of kind ``keyword`` called ``name``; with no name, the only
        object of that kind.  ``UnknownElement`` otherwise.
        """
        pool = getattr(self, SECTIONS[keyword])
        if name is not None:
            if name not in pool:
                raise UnknownElement(f"no {keyword} named {name!r} (have: {', '.join(sorted(pool)) or 'none'})")
            return pool[name]
        if len(pool) != 1:
            raise UnknownElement(f"expected exactly one {keyword}, found {len(pool)}; pick one with --object")
        return next(iter(pool.values()))

    def add(self, keyword: str, name: str, obj: Any) -> None:
        getattr(self, SECTIONS[keyword])[name] = obj


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def tokenize_line(text: str, line: int, source: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            break
        start = i
        if ch == '"':
            i += 1
            chars = []
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n:
                    i += 1
                chars.append(text[i])
                i += 1
            if i >= n:
                raise FixtureParseError("unterminated quoted token", line, start + 1, source)
            i += 1
            tokens.append(Token("".join(chars), line, start + 1))
            continue
        while i < n and not text[i].isspace() and text[i] != "#":
            i += 1
        tokens.append(Token(text[start:i], line, start + 1))
    return tokens


def _quote(text: str) -> str:
    if text and not any(ch.isspace() or ch in '#"\\' for ch in text):
        return text
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, source: str, base: FixtureDocument | None, field: FieldSpec | None = None):
        self.source = source
        self.base = base
        self.field_override = field
        self.lines: list[list[Token]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = tokenize_line(raw, number, source)
            if tokens:
                self.lines.append(tokens)
        self.pos = 0
        self.last_line = max(1, len(text.splitlines()))

    # -- plumbing --------------------------------------------------------

    def error(self, message: str, token: Token | None = None) -> FixtureParseError:
        if token is None:
            return FixtureParseError(message, self.last_line, 1, self.source)
        return FixtureParseError(message, token.line, token.column, self.source)

    def next_line(self) -> list[Token] | None:
        if self.pos >= len(self.lines):
            return None
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def peek(self) -> list[Token] | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def expect_arity(self, tokens: list[Token], minimum: int, maximum: int | None = None) -> None:
        count = len(tokens) - 1
        if count < minimum or (maximum is not None and count > maximum):
            wanted = str(minimum) if maximum == minimum else f"at least {minimum}"
            raise self.error(f"{tokens[0].text!r} expects {wanted} argument(s), got {count}", tokens[0])

    def convert(self, token: Token, fn: Callable[[str], Any], what: str) -> Any:
        try:
            return fn(token.text)
        except (ValueError, ZeroDivisionError, ZalgError, TypeError) as exc:
            raise self.error(f"bad {what} {token.text!r}: {exc}", token) from None

    def element(self, token: Token) -> Any:
        return self.convert(token, self.doc.group.parse_element, "group element")

    def scalar(self, token: Token) -> Any:
        return self.convert(token, self.doc.field.scalar, "scalar")

    def integer(self, token: Token) -> int:
        value = self.convert(token, int, "integer")
        if value < 0:
            raise self.error(f"expected a non-negative integer, got {value}", token)
        return value

    def window(self, token: Token, cls: type) -> Any:
        return self.convert(token, lambda text: cls.parse(text, self.doc.group), "window")

    def lookup(self, token: Token, keyword: str) -> Any:
        pool = getattr(self.doc, SECTIONS[keyword])
        if token.text not in pool:
            raise self.error(f"no {keyword} named {token.text!r} defined before this point", token)
        return pool[token.text]

    def matrix(self, tokens: list[Token], start: int, what: str) -> Any:
        """``rows cols e11 e12 ...`` beginning at ``tokens[start]``."""
        if len(tokens) < start + 2:
            raise self.error(f"{what}: missing matrix shape", tokens[0])
        nrows, ncols = self.integer(tokens[start]), self.integer(tokens[start + 1])
        values = [self.scalar(t) for t in tokens[start + 2:]]
        if len(values) != nrows * ncols:
            raise self.error(f"{what}: {nrows}x{ncols} matrix needs {nrows * ncols} entries, "
                             f"got {len(values)}", tokens[0])
        rows = [values[r * ncols:(r + 1) * ncols] for r in range(nrows)]
        return linalg.matrix(rows, nrows, ncols, self.doc.field)

    def body(self, header: Token) -> list[list[Token]]:
        """Lines up to the matching ``end``."""
        lines = []
        while True:
            tokens = self.next_line()
            if tokens is None:
                raise self.error(f"section {header.text!r} opened on line {header.line} has no 'end'")
            if tokens[0].text == "end":
                self.expect_arity(tokens, 0, 0)
                return lines
            if tokens[0].text in SECTIONS:
                raise self.error(f"section {tokens[0].text!r} starts before {header.text!r} is closed", tokens[0])
            lines.append(tokens)

    def single(self, lines: list[list[Token]], key: str, header: Token, required: bool = True) -> Token | None:
        found = [tokens for tokens in lines if tokens[0].text == key]
        if len(found) > 1:
            raise self.error(f"{key!r} given twice", found[1][0])
        if not found:
            if required:
                raise self.error(f"section {header.text} {self.section_name} is missing {key!r}", header)
            return None
        self.expect_arity(found[0], 1, 1)
        return found[0][1]

    def check_keys(self, lines: list[list[Token]], allowed: Iterable[str]) -> None:
        allowed = set(allowed)
        for tokens in lines:
            if tokens[0].text not in allowed:
                raise self.error(f"unexpected {tokens[0].text!r} (expected one of {', '.join(sorted(allowed))})",
                                 tokens[0])

    def build(self, header: Token, fn: Callable[[], Any]) -> Any:
        try:
            return fn()
        except FixtureParseError:
            raise
        except (ZalgError, ValueError) as exc:
            raise self.error(f"{header.text} {self.section_name}: {exc}", header) from None

    # -- document --------------------------------------------------------

    def parse(self) -> FixtureDocument:
        first = self.next_line()
        if first is None:
            raise FixtureParseError("empty fixture document", 1, 1, self.source)
        if tuple(t.text for t in first) != HEADER:
            raise self.error(f"expected header {' '.join(HEADER)!r}", first[0])

        field_line = self.next_line()
        if field_line is None or field_line[0].text != "field":
            raise self.error("expected 'field q' or 'field fp:<p>' after the header",
                             field_line[0] if field_line else None)
        self.expect_arity(field_line, 1, 1)
        field = self.convert(field_line[1], FieldSpec.parse, "field")
        if self.field_override is not None:
            field = self.field_override

        group = GradingGroup.integers()
        following = self.peek()
        if following is not None and following[0].text == "group":
            group = self.group(self.next_line())

        if self.base is not None:
            if self.base.field != field or self.base.group != group:
                raise self.error("field or group differs from the documents loaded before", field_line[0])
            self.doc = FixtureDocument(field, group)
            for attr in SECTIONS.values():
                getattr(self.doc, attr).update(getattr(self.base, attr))
        else:
            self.doc = FixtureDocument(field, group)

        while (tokens := self.next_line()) is not None:
            keyword = tokens[0]
            if keyword.text not in SECTIONS:
                raise self.error(f"expected a section keyword, got {keyword.text!r}", keyword)
            self.expect_arity(tokens, 1, 1)
            self.section_name = tokens[1].text
            if self.section_name in self.doc.names() and (
                self.base is None or self.section_name not in self.base.names()
            ):
                raise self.error(f"name {self.section_name!r} is defined twice", tokens[1])
            handler = getattr(self, f"section_{keyword.text}")
            obj = handler(keyword, self.body(keyword))
            self.doc.add(keyword.text, self.section_name, obj)
        return self.doc

    def group(self, tokens: list[Token]) -> GradingGroup:
        self.expect_arity(tokens, 1, 1)
        kind = tokens[1]
        if kind.text == "integers":
            return GradingGroup.integers()
        if kind.text != "finite":
            raise self.error(f"group must be 'integers' or 'finite', got {kind.text!r}", kind)
        self.section_name = "finite"
        lines = self.body(tokens[0])
        self.check_keys(lines, ("elements", "row"))
        elements = [t for tokens in lines if tokens[0].text == "elements" for t in tokens[1:]]
        labels = [t.text for t in elements]
        rows = {}
        for line in lines:
            if line[0].text != "row":
                continue
            self.expect_arity(line, len(labels) + 1, len(labels) + 1)
            rows[line[1].text] = [t.text for t in line[2:]]
        missing = [label for label in labels if label not in rows]
        if missing:
            raise self.error(f"Cayley table has no row for {missing[0]!r}", tokens[0])
        try:
            return GradingGroup.from_table(labels, [rows[label] for label in labels])
        except (ZalgError, ValueError) as exc:
            raise self.error(f"invalid group: {exc}", tokens[0]) from None

    # -- sections --------------------------------------------------------

    def section_algebra(self, header: Token, lines: list[list[Token]]) -> GradedAlgebra:
        self.check_keys(lines, ("window", "basis", "unit", "mul"))
        window = self.window(self.single(lines, "window", header), DegreeWindow)
        G, K = self.doc.group, self.doc.field.domain
        labels: dict = {g: [] for g in window.elements()}
        seen = set()
        for tokens in lines:
            if tokens[0].text != "basis":
                continue
            self.expect_arity(tokens, 1)
            g = self.element(tokens[1])
            if not window.contains(g):
                raise self.error(f"degree {g} is outside {window.format()}", tokens[1])
            if g in seen:
                raise self.error(f"basis for degree {g} given twice", tokens[0])
            seen.add(g)
            labels[g] = [t.text for t in tokens[2:]]
        dims = {g: len(ls) for g, ls in labels.items()}
        e = G.identity

        unit_lines = [tokens for tokens in lines if tokens[0].text == "unit"]
        if len(unit_lines) != 1:
            raise self.error("exactly one 'unit' line is required", header)
        self.expect_arity(unit_lines[0], dims[e], dims[e])
        unit = tuple(self.scalar(t) for t in unit_lines[0][1:])

        tensors = {}
        for g, h in product(window.elements(), repeat=2):
            gh = group_op(G, g, h)
            if window.contains(gh):
                tensors[(g, h)] = [[[K.zero] * dims[gh] for _ in range(dims[h])] for _ in range(dims[g])]
        for tokens in lines:
            if tokens[0].text != "mul":
                continue
            self.expect_arity(tokens, 4)
            g, h = self.element(tokens[1]), self.element(tokens[2])
            if (g, h) not in tensors:
                raise self.error(f"product of degrees {g} and {h} leaves the window", tokens[1])
            i, j = self.integer(tokens[3]), self.integer(tokens[4])
            if i >= dims[g] or j >= dims[h]:
                raise self.error(f"basis index out of range in degrees ({g},{h})", tokens[3])
            gh = group_op(G, g, h)
            self.entries(tokens[5:], tensors[(g, h)][i][j], dims[gh])
        structure = {key: tuple(tuple(tuple(cell) for cell in row) for row in T) for key, T in tensors.items()}
        return self.build(header, lambda: GradedAlgebra(
            self.doc.field, G, window, dims, {g: tuple(ls) for g, ls in labels.items()},
            structure, unit, self.section_name))

    def entries(self, tokens: list[Token], cell: list, size: int) -> None:
        """Sparse ``m=c`` entries written into ``cell``."""
        for token in tokens:
            index, sep, value = token.text.partition("=")
            if not sep:
                raise self.error(f"expected 'index=coefficient', got {token.text!r}", token)
            m = self.convert(Token(index, token.line, token.column), int, "index")
            if not 0 <= m < size:
                raise self.error(f"index {m} out of range 0..{size - 1}", token)
            cell[m] = self.scalar(Token(value, token.line, token.column + len(index) + 1))

    def section_galgebra(self, header: Token, lines: list[list[Token]]) -> GAlgebraWindow:
        associated = [tokens for tokens in lines if tokens[0].text == "associated"]
        index = self.window(self.single(lines, "index", header), IndexWindow)
        if associated:
            self.check_keys(lines, ("associated", "index"))
            tokens = associated[0]
            self.expect_arity(tokens, 2, 2)
            A = self.lookup(tokens[1], "algebra")
            side = self.convert(tokens[2], Side, "side")
            builder = associated_g_algebra if side is Side.RIGHT else associated_left_g_algebra
            return self.build(header, lambda: builder(A, index, name=self.section_name))

        self.check_keys(lines, ("index", "basis", "unit", "mul"))
        K = self.doc.field.domain
        dims, labels = {}, {}
        for tokens in lines:
            if tokens[0].text != "basis":
                continue
            self.expect_arity(tokens, 2)
            pair = (self.element(tokens[1]), self.element(tokens[2]))
            if pair in dims:
                raise self.error(f"component {pair} given twice", tokens[0])
            labels[pair] = tuple(t.text for t in tokens[3:])
            dims[pair] = len(labels[pair])
        local_units = {}
        for tokens in lines:
            if tokens[0].text != "unit":
                continue
            self.expect_arity(tokens, 1)
            f = self.element(tokens[1])
            if (f, f) not in dims:
                raise self.error(f"local unit for absent component ({f},{f})", tokens[1])
            self.expect_arity(tokens, dims[(f, f)] + 1, dims[(f, f)] + 1)
            local_units[f] = tuple(self.scalar(t) for t in tokens[2:])
        tensors = {}
        for f, g, h in product(index.elements(), repeat=3):
            if (f, g) in dims and (g, h) in dims and (f, h) in dims:
                tensors[(f, g, h)] = [[[K.zero] * dims[(f, h)] for _ in range(dims[(g, h)])]
                                      for _ in range(dims[(f, g)])]
        for tokens in lines:
            if tokens[0].text != "mul":
                continue
            self.expect_arity(tokens, 5)
            f, g, h = (self.element(t) for t in tokens[1:4])
            if (f, g, h) not in tensors:
                raise self.error(f"product ({f},{g})x({g},{h}) touches an absent component", tokens[1])
            i, j = self.integer(tokens[4]), self.integer(tokens[5])
            if i >= dims[(f, g)] or j >= dims[(g, h)]:
                raise self.error(f"basis index out of range in ({f},{g},{h})", tokens[4])
            self.entries(tokens[6:], tensors[(f, g, h)][i][j], dims[(f, h)])
        structure = {key: tuple(tuple(tuple(cell) for cell in row) for row in T) for key, T in tensors.items()}
        return self.build(header, lambda: GAlgebraWindow(
            self.doc.field, self.doc.group, index, dims, labels, structure, local_units, None, self.section_name))

    def section_map(self, header: Token, lines: list[list[Token]]) -> GradedLinearMap:
        self.check_keys(lines, ("source", "target", "shift", "block"))
        source = self.lookup(self.single(lines, "source", header), "algebra")
        target = self.lookup(self.single(lines, "target", header), "algebra")
        shift = self.element(self.single(lines, "shift", header))
        blocks = {}
        for tokens in lines:
            if tokens[0].text == "block":
                self.expect_arity(tokens, 3)
                g = self.element(tokens[1])
                blocks[g] = self.matrix(tokens, 2, f"block {g}")
        return self.build(header, lambda: GradedLinearMap(source, target, shift, blocks))

    def section_morphism(self, header: Token, lines: list[list[Token]]) -> GAlgebraMorphism:
        self.check_keys(lines, ("source", "target", "block"))
        source = self.lookup(self.single(lines, "source", header), "galgebra")
        target = self.lookup(self.single(lines, "target", header), "galgebra")
        blocks = {}
        for tokens in lines:
            if tokens[0].text == "block":
                self.expect_arity(tokens, 4)
                pair = (self.element(tokens[1]), self.element(tokens[2]))
                blocks[pair] = self.matrix(tokens, 3, f"block {pair}")
        return self.build(header, lambda: GAlgebraMorphism(source, target, blocks, self.section_name))

    def section_twist(self, header: Token, lines: list[list[Token]]) -> TwistingSystem:
        self.check_keys(lines, ("algebra", "family", "sigma", "block"))
        A = self.lookup(self.single(lines, "algebra", header), "algebra")
        family = self.window(self.single(lines, "family", header), IndexWindow)
        sigma = self.single(lines, "sigma", header, required=False)
        if sigma is not None:
            if any(tokens[0].text == "block" for tokens in lines):
                raise self.error("a twist is given either by 'sigma' or by blocks, not both", sigma)
            sigma_map = self.lookup(sigma, "map")
            return self.build(header, lambda: sigma_power_system(A, sigma_map, family, self.section_name))
        blocks: dict = {g: {} for g in family.elements()}
        for tokens in lines:
            if tokens[0].text != "block":
                continue
            self.expect_arity(tokens, 4)
            g, d = self.element(tokens[1]), self.element(tokens[2])
            if g not in blocks:
                raise self.error(f"tau_{g} is outside the family window {family.format()}", tokens[1])
            blocks[g][d] = self.matrix(tokens, 3, f"block {g} {d}")
        return self.build(header, lambda: TwistingSystem(
            A, family, {g: GradedLinearMap(A, A, A.identity, b) for g, b in blocks.items()},
            name=self.section_name))

    def section_principal(self, header: Token, lines: list[list[Token]]) -> PrincipalMap:
        self.check_keys(lines, ("carrier", "family", "block"))
        R = self.lookup(self.single(lines, "carrier", header), "galgebra")
        family_window = self.window(self.single(lines, "family", header), IndexWindow)
        family: dict = {g: {} for g in family_window.elements()}
        for tokens in lines:
            if tokens[0].text != "block":
                continue
            self.expect_arity(tokens, 5)
            g = self.element(tokens[1])
            pair = (self.element(tokens[2]), self.element(tokens[3]))
            if g not in family:
                raise self.error(f"T_{g} is outside the family window {family_window.format()}", tokens[1])
            family[g][pair] = self.matrix(tokens, 4, f"block {g} {pair}")
        return self.build(header, lambda: PrincipalMap(R, family_window, family, name=self.section_name))

    def section_module(self, header: Token, lines: list[list[Token]]) -> BigradedModule:
        self.check_keys(lines, ("base", "index", "summand"))
        B = self.lookup(self.single(lines, "base", header), "algebra")
        index = self.window(self.single(lines, "index", header), IndexWindow)
        rows: dict = {g: [] for g in index.elements()}
        for tokens in lines:
            if tokens[0].text != "summand":
                continue
            self.expect_arity(tokens, 2)
            g, s = self.element(tokens[1]), self.element(tokens[2])
            if g not in rows:
                raise self.error(f"row {g} is outside {index.format()}", tokens[1])
            idempotent = tuple(self.scalar(t) for t in tokens[3:]) or None
            rows[g].append(Summand(s, idempotent))
        return self.build(header, lambda: BigradedModule(
            B, index, {g: tuple(row) for g, row in rows.items()}, self.section_name))


def parse_document(text: str, source: str = "<input>", base: FixtureDocument | None = None,
                   field: FieldSpec | None = None) -> FixtureDocument:
    """
    Parse a fixture document.

    Sections may refer to objects defined earlier in the same text or in
    ``base`` (documents loaded before this one).  ``field`` replaces the
    declared field, so one file can be read over several fields.  Every
    failure is a ``FixtureParseError`` carrying the line and column.
    """
    doc = _Parser(text, source, base, field).parse()
    logger.debug("parsed %s: %s", source, ", ".join(f"{k}={len(getattr(doc, a))}" for k, a in SECTIONS.items()))
    return doc


def load_documents(paths: Iterable[Path | str], field: FieldSpec | None = None) -> FixtureDocument:
    """Parse files in order; each may refer to names from the ones before."""
    doc: FixtureDocument | None = None
    for path in paths:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise FixtureParseError(f"cannot read file: {exc.strerror}", 1, 1, str(path)) from None
        doc = parse_document(text, str(path), doc, field)
    if doc is None:
        raise FixtureParseError("no input files", 1, 1)
    return doc


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------


class _Namer:
    """Names for every object the document refers to, adding missing ones."""

    def __init__(self, doc: FixtureDocument):
        self.doc = doc
        self.by_id: dict[int, str] = {}
        for keyword, attr in SECTIONS.items():
            for name, obj in getattr(doc, attr).items():
                self.by_id[id(obj)] = name

    def name(self, keyword: str, obj: Any) -> str:
        if id(obj) in self.by_id:
            return self.by_id[id(obj)]
        taken = self.doc.names()
        candidate, n = obj.name, 2
        while candidate in taken:
            candidate, n = f"{obj.name}_{n}", n + 1
        self.doc.add(keyword, candidate, obj)
        self.by_id[id(obj)] = candidate
        return candidate


def complete_document(doc: FixtureDocument) -> FixtureDocument:
    """
    A copy of ``doc`` that also holds every object its members refer to
    (carriers, sources, targets, origins, generating automorphisms).
    """
    full = FixtureDocument(doc.field, doc.group)
    for attr in SECTIONS.values():
        getattr(full, attr).update(getattr(doc, attr))
    namer = _Namer(full)
    for T in list(full.principal_maps.values()):
        namer.name("galgebra", T.carrier)
    for phi in list(full.morphisms.values()):
        namer.name("galgebra", phi.source)
        namer.name("galgebra", phi.target)
    for tau in list(full.systems.values()):
        namer.name("algebra", tau.carrier)
        if tau.sigma is not None:
            namer.name("map", tau.sigma)
    for R in list(full.g_algebras.values()):
        if R.origin is not None:
            namer.name("algebra", R.origin.algebra)
    for phi in list(full.maps.values()):
        namer.name("algebra", phi.source)
        namer.name("algebra", phi.target)
    for P in list(full.modules.values()):
        namer.name("algebra", P.base)
    return full


class _Printer:
    def __init__(self, doc: FixtureDocument, expand: bool = False):
        self.doc = complete_document(doc)
        self.expand = expand
        self.namer = _Namer(self.doc)
        self.F = self.doc.field
        self.G = self.doc.group
        self.out: list[str] = []

    def el(self, g: Any) -> str:
        return self.G.format_element(g)

    def sc(self, c: Any) -> str:
        return self.F.format(c)

    def matrix(self, M: Any) -> str:
        nrows, ncols = M.shape
        values = [self.sc(c) for row in linalg.entries(M) for c in row]
        return " ".join([str(nrows), str(ncols), *values])

    def line(self, *parts: str) -> None:
        self.out.append("  " + " ".join(parts))

    def sparse(self, cell: Iterable[Any]) -> list[str]:
        return [f"{m}={self.sc(c)}" for m, c in enumerate(cell) if not self.F.is_zero(c)]

    def render(self) -> str:
        self.out = [" ".join(HEADER), f"field {self.F.label()}"]
        if self.G.is_integers:
            self.out.append("group integers")
        else:
            self.out.append("group finite")
            self.line("elements", *self.G.labels)
            for g in self.G.labels:
                self.line("row", g, *(group_op(self.G, g, h) for h in self.G.labels))
            self.out.append("end")
        for keyword, attr in SECTIONS.items():
            pool = getattr(self.doc, attr)
            for name in sorted(pool):
                self.out.append("")
                self.out.append(f"{keyword} {_quote(name)}")
                getattr(self, f"print_{keyword}")(pool[name])
                self.out.append("end")
        return "\n".join(self.out) + "\n"

    def print_algebra(self, A: GradedAlgebra) -> None:
        self.line("window", A.window.format())
        for g in A.degrees():
            self.line("basis", self.el(g), *(_quote(label) for label in A.labels[g]))
        self.line("unit", *(self.sc(c) for c in A.unit))
        for g, h in product(A.degrees(), repeat=2):
            if (g, h) not in A.structure:
                continue
            T = A.structure[(g, h)]
            for i, j in product(range(A.dims[g]), range(A.dims[h])):
                entries = self.sparse(T[i][j])
                if entries:
                    self.line("mul", self.el(g), self.el(h), str(i), str(j), *entries)

    def print_galgebra(self, R: GAlgebraWindow) -> None:
        if R.origin is not None and not self.expand:
            self.line("associated", _quote(self.namer.name("algebra", R.origin.algebra)), R.origin.side.value)
            self.line("index", R.index_window.format())
            return
        self.line("index", R.index_window.format())
        for f, g in R.pairs():
            self.line("basis", self.el(f), self.el(g), *(_quote(label) for label in R.labels[(f, g)]))
        for f in R.indices():
            if f in R.local_units:
                self.line("unit", self.el(f), *(self.sc(c) for c in R.local_units[f]))
        for f, g, h in product(R.indices(), repeat=3):
            if (f, g, h) not in R.structure:
                continue
            T = R.structure[(f, g, h)]
            for i, j in product(range(R.dims[(f, g)]), range(R.dims[(g, h)])):
                entries = self.sparse(T[i][j])
                if entries:
                    self.line("mul", self.el(f), self.el(g), self.el(h), str(i), str(j), *entries)

    def print_map(self, phi: GradedLinearMap) -> None:
        self.line("source", _quote(self.namer.name("algebra", phi.source)))
        self.line("target", _quote(self.namer.name("algebra", phi.target)))
        self.line("shift", self.el(phi.degree_shift))
        for g in phi.degrees():
            self.line("block", self.el(g), self.matrix(phi.blocks[g]))

    def print_morphism(self, phi: GAlgebraMorphism) -> None:
        self.line("source", _quote(self.namer.name("galgebra", phi.source)))
        self.line("target", _quote(self.namer.name("galgebra", phi.target)))
        for pair in phi.source.pairs():
            if pair in phi.blocks:
                self.line("block", self.el(pair[0]), self.el(pair[1]), self.matrix(phi.blocks[pair]))

    def print_twist(self, tau: TwistingSystem) -> None:
        self.line("algebra", _quote(self.namer.name("algebra", tau.carrier)))
        self.line("family", tau.family_window.format())
        if tau.sigma is not None:
            self.line("sigma", _quote(self.namer.name("map", tau.sigma)))
            return
        for g in tau.members():
            for d in tau.carrier.degrees():
                if tau.defined(g, d):
                    self.line("block", self.el(g), self.el(d), self.matrix(tau.block(g, d)))

    def print_principal(self, T: PrincipalMap) -> None:
        self.line("carrier", _quote(self.namer.name("galgebra", T.carrier)))
        self.line("family", T.family_window.format())
        for g in T.members():
            for pair in T.carrier.pairs():
                if T.defined(g, pair):
                    self.line("block", self.el(g), self.el(pair[0]), self.el(pair[1]), self.matrix(T.block(g, pair)))

    def print_module(self, P: BigradedModule) -> None:
        self.line("base", _quote(self.namer.name("algebra", P.base)))
        self.line("index", P.index_window.format())
        for g in P.index_window.elements():
            for summand in P.rows[g]:
                coords = () if summand.idempotent is None else tuple(self.sc(c) for c in summand.idempotent)
                self.line("summand", self.el(g), self.el(summand.shift), *coords)


def print_document(doc: FixtureDocument, expand: bool = False) -> str:
    """
    Canonical text of ``doc``, including every object its members refer to.

    Associated G-algebras are written as a reference to their algebra unless
    ``expand`` asks for the full component data.
    """
    return _Printer(doc, expand).render()


def document_of(field: FieldSpec, group: GradingGroup, **objects: dict) -> FixtureDocument:
    """Build a document from keyword dicts named after ``FixtureDocument`` attributes."""
    doc = FixtureDocument(field, group)
    for attr, pool in objects.items():
        getattr(doc, attr).update(pool)
    return doc


def bundle_document(bundle: Any) -> FixtureDocument:
    """Every object of a ``FixtureBundle`` as one document."""
    return document_of(
        bundle.field, bundle.index_window.group,
        algebras=bundle.algebras, maps=bundle.maps, g_algebras=bundle.g_algebras,
        morphisms=bundle.morphisms, systems=bundle.systems,
        principal_maps=bundle.principal_maps, modules=bundle.modules,
    )
