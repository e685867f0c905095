"""Line-oriented script language for singularization plans.

One statement per line; ``#`` starts a comment::

    surface T genus 1 res 4
    loop m = handle(T, 1)
    loop c = cycle(T, 8, 9, 10, 11)
    loop e = link(S, 4)
    collapse m
    zip c at 8 10
    identify a b offset 2 reverse

Loop selectors are ``handle``, ``tunnel`` and ``separating`` (canonical
loops of a genus chain), ``cycle`` (explicit vertex list, local ids of the
surface) and ``link`` (the neighbour cycle of a vertex).  ``res`` is the
number of refinement rounds for a sphere and the grid size for a torus
chain.
"""

from __future__ import annotations

import difflib
import re
from dataclasses import dataclass, field
from typing import Union

from .builders import SurfaceBundle, build_genus_chain, canonical_loop, link_loop, make_bundle
from .errors import ScriptError, SingularizeError
from .loops import Collapse, IdentifyWith, LoopMarking, Zip, check_pairwise_disjoint, is_separating, validate_simple_cycle

KEYWORDS = ("surface", "loop", "collapse", "zip", "identify")
SELECTORS = ("handle", "tunnel", "separating", "cycle", "link")
DEFAULT_TORUS_RES = 4

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),=])|(?P<bad>\S))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class SurfaceDecl:
    name: str
    genus: int
    res: int | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class LoopDecl:
    name: str
    selector: str
    surface: str
    args: tuple[int, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CollapseStmt:
    loop: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ZipStmt:
    loop: str
    at: tuple[int, int] | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IdentifyStmt:
    a: str
    b: str
    offset: int | None = None
    reverse: bool = False
    line: int = field(default=0, compare=False)


Statement = Union[CollapseStmt, ZipStmt, IdentifyStmt]


@dataclass(frozen=True)
class SingularizationPlan:
    surfaces: tuple[SurfaceDecl, ...]
    loops: tuple[LoopDecl, ...]
    operations: tuple[Statement, ...]
    bundle: SurfaceBundle = field(compare=False, repr=False, default=None)
    markings: dict[str, LoopMarking] = field(compare=False, repr=False, default_factory=dict)
    warnings: tuple[str, ...] = field(compare=False, default=())

    @property
    def n(self) -> int:
        return len(self.surfaces)

    @property
    def G(self) -> int:
        return sum(s.genus for s in self.surfaces)

    def count(self, kind) -> int:
        return sum(1 for op in self.operations if isinstance(op, kind))

    @property
    def C(self) -> int:
        return self.count(CollapseStmt)

    @property
    def Z(self) -> int:
        return self.count(ZipStmt)

    @property
    def D(self) -> int:
        return self.count(IdentifyStmt)


def tokenize(text: str, lineno: int, source: str = "<script>") -> list[Token]:
    tokens = []
    pos = 0
    text = text.split("#", 1)[0].rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        kind = m.lastgroup
        col = m.start(kind) + 1
        if kind == "bad":
            raise ScriptError(f"unexpected character {m.group(kind)!r}", lineno, col, source=source)
        tokens.append(Token(kind, m.group(kind), lineno, col))
        pos = m.end()
    return tokens


class _Line:
    """Cursor over the tokens of one line."""

    def __init__(self, tokens, lineno, source):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.source = source

    def error(self, message, tok=None, suggestion=None):
        if tok is None:
            tok = self.tokens[self.i] if self.i < len(self.tokens) else None
        col = tok.column if tok else (self.tokens[-1].column + len(self.tokens[-1].text) if self.tokens else 1)
        return ScriptError(message, self.lineno, col, suggestion, self.source)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind, what):
        tok = self.peek()
        if tok is None or tok.kind != kind:
            got = "end of line" if tok is None else repr(tok.text)
            raise self.error(f"expected {what}, got {got}")
        self.i += 1
        return tok

    def keyword(self, word):
        tok = self.peek()
        if tok is None or tok.text != word:
            got = "end of line" if tok is None else repr(tok.text)
            raise self.error(f"expected '{word}', got {got}")
        self.i += 1
        return tok

    def accept(self, word):
        tok = self.peek()
        if tok is not None and tok.text == word:
            self.i += 1
            return tok
        return None

    def integer(self, what="integer"):
        return int(self.take("int", what).text)

    def name(self, what="name"):
        return self.take("name", what)

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise self.error(f"unexpected {tok.text!r} at end of statement")


def _suggest(word, options):
    close = difflib.get_close_matches(word, options, n=1, cutoff=0.6)
    return close[0] if close else None


def _parse_line(cur: _Line):
    head = cur.peek()
    if head.kind != "name" or head.text not in KEYWORDS:
        raise cur.error(f"unknown statement {head.text!r}", head, _suggest(head.text, KEYWORDS))
    cur.i += 1
    word = head.text
    line = cur.lineno
    if word == "surface":
        name = cur.name("surface name").text
        cur.keyword("genus")
        genus = cur.integer("genus")
        if genus < 0:
            raise cur.error("genus must be non-negative", cur.tokens[cur.i - 1])
        res = None
        if cur.accept("res"):
            res = cur.integer("resolution")
        cur.done()
        return SurfaceDecl(name, genus, res, line)
    if word == "loop":
        name = cur.name("loop name").text
        cur.keyword("=")
        sel = cur.name("loop selector")
        if sel.text not in SELECTORS:
            raise cur.error(f"unknown loop selector {sel.text!r}", sel, _suggest(sel.text, SELECTORS))
        cur.keyword("(")
        surface = cur.name("surface name").text
        args = []
        while True:
            tok = cur.peek()
            if tok is not None and tok.text == ",":
                cur.i += 1
                continue
            if tok is not None and tok.kind == "int":
                args.append(int(tok.text))
                cur.i += 1
                continue
            break
        cur.keyword(")")
        cur.done()
        if sel.text == "cycle" and len(args) < 3:
            raise cur.error("cycle needs at least 3 vertices", sel)
        if sel.text != "cycle" and len(args) != 1:
            raise cur.error(f"{sel.text} takes exactly one index", sel)
        return LoopDecl(name, sel.text, surface, tuple(args), line)
    if word == "collapse":
        name = cur.name("loop name").text
        cur.done()
        return CollapseStmt(name, line)
    if word == "zip":
        name = cur.name("loop name").text
        at = None
        if cur.accept("at"):
            at = (cur.integer("vertex id"), cur.integer("vertex id"))
        cur.done()
        return ZipStmt(name, at, line)
    # identify
    a = cur.name("loop name").text
    b = cur.name("second loop name").text
    offset = None
    reverse = False
    while cur.peek() is not None:
        if cur.accept("offset"):
            offset = cur.integer("offset")
        elif cur.accept("reverse"):
            reverse = True
        else:
            tok = cur.peek()
            raise cur.error(f"unexpected {tok.text!r}", tok, _suggest(tok.text, ("offset", "reverse")))
    return IdentifyStmt(a, b, offset, reverse, line)


def parse_statements(text: str, source: str = "<script>"):
    """Syntax only: the statements of a script, in order."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize(raw, lineno, source)
        if not tokens:
            continue
        out.append((_parse_line(_Line(tokens, lineno, source)), tokens))
    return out


def _column_of(tokens, text, default=1):
    for tok in tokens:
        if tok.text == text:
            return tok.column
    return default


def _build_surface(decl: SurfaceDecl):
    if decl.genus == 0:
        return build_genus_chain(0, refinement=decl.res or 0)
    res = DEFAULT_TORUS_RES if decl.res is None else decl.res
    return build_genus_chain(decl.genus, res, res)


def _resolve_loop(decl: LoopDecl, surface) -> LoopMarking:
    if decl.selector in ("handle", "tunnel", "separating"):
        return canonical_loop(surface, decl.selector, decl.args[0], decl.surface, decl.name)
    if decl.selector == "link":
        loop = link_loop(surface, decl.args[0], decl.surface, decl.name)
    else:
        loop = validate_simple_cycle(surface, decl.args, decl.surface, decl.name)
    return loop.with_kind("separating" if is_separating(surface, loop) else "unclassified")


def parse_script(text: str, source: str = "<script>") -> SingularizationPlan:
    """Parse and statically validate a script into a plan."""
    surfaces: dict[str, SurfaceDecl] = {}
    built = {}
    loops: dict[str, LoopDecl] = {}
    markings: dict[str, LoopMarking] = {}
    ops = []
    used: dict[str, int] = {}
    warnings = []

    for stmt, tokens in parse_statements(text, source):
        line = stmt.line

        def fail(msg, word=None, suggestion=None, column=None):
            if column is None:
                column = _column_of(tokens, word) if word else 1
            return ScriptError(msg, line, column, suggestion, source)

        if isinstance(stmt, SurfaceDecl):
            if stmt.name in surfaces:
                raise fail(f"surface {stmt.name!r} already declared", stmt.name)
            try:
                built[stmt.name] = _build_surface(stmt)
            except SingularizeError as exc:
                raise fail(str(exc), "res") from exc
            surfaces[stmt.name] = stmt
        elif isinstance(stmt, LoopDecl):
            if stmt.name in loops:
                raise fail(f"loop {stmt.name!r} already declared", stmt.name)
            if stmt.surface not in surfaces:
                raise fail(
                    f"unknown surface {stmt.surface!r}",
                    stmt.surface,
                    _suggest(stmt.surface, list(surfaces)),
                )
            try:
                marking = _resolve_loop(stmt, built[stmt.surface])
            except SingularizeError as exc:
                raise fail(f"loop {stmt.name!r}: {exc}", stmt.selector) from exc
            if marking.kind == "unclassified":
                warnings.append(
                    f"line {line}: loop {stmt.name!r} is neither separating nor a labelled handle/tunnel loop"
                )
            loops[stmt.name] = stmt
            markings[stmt.name] = marking
        else:
            names = [stmt.a, stmt.b] if isinstance(stmt, IdentifyStmt) else [stmt.loop]
            for nm in names:
                if nm not in loops:
                    raise fail(f"unknown loop {nm!r}", nm, _suggest(nm, list(loops)))
                if nm in used:
                    raise fail(f"loop {nm!r} already operated on at line {used[nm]}", nm)
            if isinstance(stmt, IdentifyStmt):
                if stmt.a == stmt.b:
                    raise fail("identify needs two distinct loops", column=tokens[2].column)
                markings[stmt.a] = markings[stmt.a].with_operation(
                    IdentifyWith(stmt.b, stmt.offset or 0, stmt.reverse)
                )
                markings[stmt.b] = markings[stmt.b].with_operation(
                    IdentifyWith(stmt.a, stmt.offset or 0, stmt.reverse)
                )
            elif isinstance(stmt, ZipStmt):
                loop = markings[stmt.loop]
                if stmt.at is not None:
                    p, q = stmt.at
                    if p == q:
                        raise fail("zip endpoints must differ", "at")
                    if p not in loop.vertices or q not in loop.vertices:
                        raise fail(f"zip endpoints must lie on loop {stmt.loop!r}", "at")
                markings[stmt.loop] = loop.with_operation(Zip(*(stmt.at or (None, None))))
            else:
                markings[stmt.loop] = markings[stmt.loop].with_operation(Collapse())
            for nm in names:
                for other in list(used) + [x for x in names if x != nm and x not in used]:
                    clash = check_pairwise_disjoint([markings[nm], markings[other]])
                    if clash:
                        raise fail(
                            f"loop {nm!r} shares vertices {list(clash[0].shared)} with loop {other!r}",
                            nm,
                        )
            for nm in names:
                used[nm] = line
            ops.append(stmt)
    bundle = make_bundle([(s.name, built[s.name], s.genus) for s in surfaces.values()])
    return SingularizationPlan(
        tuple(surfaces.values()),
        tuple(loops.values()),
        tuple(ops),
        bundle,
        markings,
        tuple(warnings),
    )


def render_plan(plan: SingularizationPlan) -> str:
    """Script text that parses back to an equal plan."""
    lines = []
    for s in plan.surfaces:
        lines.append(f"surface {s.name} genus {s.genus}" + ("" if s.res is None else f" res {s.res}"))
    for lp in plan.loops:
        args = ", ".join(str(a) for a in lp.args)
        lines.append(f"loop {lp.name} = {lp.selector}({lp.surface}, {args})")
    for op in plan.operations:
        if isinstance(op, CollapseStmt):
            lines.append(f"collapse {op.loop}")
        elif isinstance(op, ZipStmt):
            lines.append(f"zip {op.loop}" + ("" if op.at is None else f" at {op.at[0]} {op.at[1]}"))
        else:
            text = f"identify {op.a} {op.b}"
            if op.offset is not None:
                text += f" offset {op.offset}"
            if op.reverse:
                text += " reverse"
            lines.append(text)
    return "\n".join(lines) + "\n"
