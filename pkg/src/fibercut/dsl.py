"""A small line-oriented language for surfaces, monodromies, and paths.

Example::

    surface {
      vertex D1 = [b1+, b2+, b3+];
      vertex D2 = [b1-, b2-, b3-];
      edge b1 = (b1+, b1-);
      edge b2 = (b2+, b2-);
      edge b3 = (b3+, b3-);
    }
    monodromy h = t([b2+, b1-]) t([b3+, b2-]);
    arc a = D1(0) b2+ D2(1);

Statement terminators are optional.  ``docs/dsl.md`` has the grammar.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import (
    DanglingHalfEdge,
    FibercutError,
    SceneDanglingHalfEdge,
    SceneSyntaxError,
    UnknownName,
    ValidationError,
)
from .fiber_calculus import OpenBook
from .paths import Arc, ImmersedArc, Loop, check_arc, make_loop, reduce_word
from .surface import BoundaryPoint, FatGraph, build_surface
from .twist import TwistWord, make_word

KEYWORDS = ("surface", "monodromy", "loop", "arc", "immersed", "system")

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>-?\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*[+-]?)
  | (?P<punct>[{}\[\](),;=^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SceneSyntaxError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


@dataclass
class Scene:
    """An open book together with named paths and decomposing systems."""

    book: OpenBook
    objects: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)  # name -> ("bands" | "arcs", names)
    monodromy_name: str = "h"

    @property
    def surface(self) -> FatGraph:
        return self.book.surface

    def get(self, name: str):
        if name not in self.objects:
            raise UnknownName(f"no arc, loop, or immersed arc named {name!r}")
        return self.objects[name]

    def arc(self, name: str) -> Arc:
        g = self.get(name)
        if not isinstance(g, Arc):
            raise ValidationError(f"{name!r} is not an arc")
        return g

    def system(self, name: str):
        from .composite_calculus import band_system, system_from_arcs

        if name not in self.systems:
            raise UnknownName(f"no system named {name!r}")
        kind, names = self.systems[name]
        if kind == "bands":
            return band_system(self.book, names)
        return system_from_arcs(self.book, [self.arc(n) for n in names])

    def key(self) -> tuple:
        F = self.surface
        return (
            F.rotations,
            F.pairs,
            F.vertex_names,
            F.edge_names,
            getattr(self.book.monodromy, "letters", ()),
            self.monodromy_name,
            tuple(self.objects.items()),
            tuple(self.systems.items()),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Scene) and self.key() == other.key()


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.book: OpenBook | None = None
        self.name = "h"
        self.objects: dict = {}
        self.systems: dict = {}

    # -- token helpers --------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def peek(self, text: str, offset: int = 0) -> bool:
        return self.toks[self.i + offset].text == text

    def expect(self, text: str) -> Token:
        t = self.tok
        if t.text != text:
            raise SceneSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.column)
        return self.next()

    def name_tok(self) -> Token:
        t = self.tok
        if t.kind != "name":
            raise SceneSyntaxError(f"expected a name, found {t.text or 'end of input'!r}", t.line, t.column)
        return self.next()

    def number(self) -> tuple[Fraction, Token]:
        t = self.tok
        if t.kind != "num":
            raise SceneSyntaxError(f"expected a number, found {t.text or 'end of input'!r}", t.line, t.column)
        self.next()
        return Fraction(t.text), t

    def integer(self) -> tuple[int, Token]:
        v, t = self.number()
        if v.denominator != 1:
            raise SceneSyntaxError(f"expected an integer, found {t.text!r}", t.line, t.column)
        return int(v), t

    def end_statement(self) -> None:
        if self.peek(";"):
            self.next()

    def fresh(self, t: Token) -> str:
        if t.text in self.objects or t.text in self.systems:
            raise ValidationError(f"name {t.text!r} is already defined", t.line, t.column)
        return t.text

    def need_book(self, t: Token) -> OpenBook:
        if self.book is None:
            raise ValidationError("a surface must be declared first", t.line, t.column)
        return self.book

    # -- statements -----------------------------------------------------
    def parse(self) -> Scene:
        while self.tok.kind != "eof":
            t = self.tok
            if t.text == ";":
                self.next()
                continue
            if t.text not in KEYWORDS:
                raise SceneSyntaxError(f"expected a statement, found {t.text!r}", t.line, t.column)
            getattr(self, "st_" + t.text)()
        if self.book is None:
            t = self.tok
            raise ValidationError("scene declares no surface", t.line, t.column)
        return Scene(self.book, self.objects, self.systems, self.name)

    def st_surface(self) -> None:
        kw = self.expect("surface")
        if self.book is not None:
            raise ValidationError("only one surface per scene", kw.line, kw.column)
        if self.peek("{"):
            self.book = OpenBook(self.surface_block(kw), TwistWord())
        else:
            self.alias()
        self.end_statement()

    def surface_block(self, kw: Token) -> FatGraph:
        self.expect("{")
        vertices: dict[str, list[str]] = {}
        edges: dict[str, tuple[str, str]] = {}
        while not self.peek("}"):
            t = self.name_tok()
            if t.text == "vertex":
                n = self.name_tok()
                if n.text in vertices:
                    raise ValidationError(f"vertex {n.text!r} declared twice", n.line, n.column)
                self.expect("=")
                vertices[n.text] = self.half_list()
            elif t.text == "edge":
                n = self.name_tok()
                if n.text in edges:
                    raise ValidationError(f"edge {n.text!r} declared twice", n.line, n.column)
                self.expect("=")
                self.expect("(")
                a = self.name_tok().text
                self.expect(",")
                b = self.name_tok().text
                self.expect(")")
                edges[n.text] = (a, b)
            else:
                raise SceneSyntaxError(f"expected 'vertex' or 'edge', found {t.text!r}", t.line, t.column)
            self.end_statement()
        self.expect("}")
        try:
            return build_surface(vertices, edges)
        except DanglingHalfEdge as e:
            raise SceneDanglingHalfEdge(str(e), kw.line, kw.column) from e
        except FibercutError as e:
            raise ValidationError(str(e), kw.line, kw.column) from e

    def half_list(self) -> list[str]:
        self.expect("[")
        out = []
        while not self.peek("]"):
            out.append(self.name_tok().text)
            if not self.peek("]"):
                self.expect(",")
        self.expect("]")
        return out

    def params(self) -> dict[str, tuple[int, Token]]:
        out = {}
        while self.tok.kind == "name" and self.peek("=", 1):
            k = self.next()
            self.next()
            out[k.text] = self.integer()
        return out

    def alias(self) -> None:
        from . import catalog
        from .torus_families import torus_open_book, torus_sum_book

        kind = self.name_tok()
        ps = self.params()

        def get(k: str, default=None) -> int:
            if k in ps:
                return ps[k][0]
            if default is None:
                raise ValidationError(f"surface {kind.text} needs {k}=...", kind.line, kind.column)
            return default

        try:
            if kind.text == "disk":
                self.book = catalog.disk_book()
            elif kind.text == "annulus":
                self.book = catalog.annulus_book(get("k", 0))
            elif kind.text == "hopf":
                self.book = catalog.hopf_book(get("sign"))
            elif kind.text == "pants":
                self.book = catalog.pants_book(get("a", 0), get("b", 0))
            elif kind.text == "torus2":
                self.book = torus_open_book(get("p"))
            elif kind.text == "torus2sum":
                self.book, S = torus_sum_book(get("p"), get("q"))
                self.systems["bands"] = ("bands", S.bands)
            else:
                raise UnknownName(f"unknown surface constructor {kind.text!r}", kind.line, kind.column)
        except ValueError as e:
            raise ValidationError(str(e), kind.line, kind.column) from e

    def st_monodromy(self) -> None:
        kw = self.expect("monodromy")
        B = self.need_book(kw)
        self.name = self.name_tok().text
        self.expect("=")
        F = B.surface
        letters = []
        if self.peek("id"):
            self.next()
        else:
            while self.peek("t") and self.peek("(", 1):
                t = self.next()
                self.expect("(")
                if self.peek("["):
                    L = self.make_loop(self.half_list(), t)
                else:
                    n = self.name_tok()
                    L = self.objects.get(n.text)
                    if not isinstance(L, Loop):
                        raise UnknownName(f"no loop named {n.text!r}", n.line, n.column)
                self.expect(")")
                e = 1
                if self.peek("^"):
                    self.next()
                    e, et = self.integer()
                    if e == 0:
                        raise ValidationError("twist exponent must be nonzero", et.line, et.column)
                letters.append((L, e, t))
            if not letters:
                t = self.tok
                raise SceneSyntaxError(f"expected 'id' or a twist t(...), found {t.text!r}", t.line, t.column)
        try:
            w = make_word(F, [(L, e) for L, e, _ in letters])
        except FibercutError as e:
            raise ValidationError(str(e), kw.line, kw.column) from e
        self.book = OpenBook(F, w, B.provenance, B.marks)
        self.end_statement()

    def make_loop(self, word: list[str], t: Token) -> Loop:
        F = self.need_book(t).surface
        for h in word:
            if h not in F.vertex_of:
                raise UnknownName(f"unknown half-edge {h!r}", t.line, t.column)
        try:
            return make_loop(F, word)
        except FibercutError as e:
            raise ValidationError(str(e), t.line, t.column) from e

    def st_loop(self) -> None:
        kw = self.expect("loop")
        n = self.name_tok()
        name = self.fresh(n)
        self.expect("=")
        self.objects[name] = self.make_loop(self.half_list(), kw)
        self.end_statement()

    def point(self) -> BoundaryPoint:
        F = self.need_book(self.tok).surface
        v = self.name_tok()
        if v.text not in F.vertex_index:
            raise UnknownName(f"unknown vertex {v.text!r}", v.line, v.column)
        self.expect("(")
        c, ct = self.integer()
        key = Fraction(0)
        if self.peek(","):
            self.next()
            key, _ = self.number()
        self.expect(")")
        vi = F.vertex_index[v.text]
        if not 0 <= c < F.n_corners(vi):
            raise ValidationError(f"vertex {v.text} has no corner {c}", ct.line, ct.column)
        return BoundaryPoint(vi, c, key)

    def arc_body(self, kw: Token) -> Arc:
        F = self.need_book(kw).surface
        start = self.point()
        path = []
        while self.tok.kind == "name" and not self.peek("(", 1):
            h = self.next()
            if h.text not in F.vertex_of:
                raise UnknownName(f"unknown half-edge {h.text!r}", h.line, h.column)
            path.append(h.text)
        end = self.point()
        a = Arc(start, tuple(path), end)
        try:
            check_arc(F, a)
        except FibercutError as e:
            raise ValidationError(str(e), kw.line, kw.column) from e
        if reduce_word(F, a.path) != a.path:
            raise ValidationError("arc word backtracks through a band", kw.line, kw.column)
        return a

    def st_arc(self) -> None:
        kw = self.expect("arc")
        name = self.fresh(self.name_tok())
        self.expect("=")
        self.objects[name] = self.arc_body(kw)
        self.end_statement()

    def st_immersed(self) -> None:
        kw = self.expect("immersed")
        name = self.fresh(self.name_tok())
        self.expect("=")
        self.objects[name] = ImmersedArc(self.arc_body(kw))
        self.end_statement()

    def st_system(self) -> None:
        kw = self.expect("system")
        B = self.need_book(kw)
        name = self.fresh(self.name_tok())
        self.expect("=")
        kind = self.name_tok()
        if kind.text not in ("bands", "arcs"):
            raise SceneSyntaxError(f"expected 'bands' or 'arcs', found {kind.text!r}", kind.line, kind.column)
        names = [self.name_tok()]
        while self.peek(","):
            self.next()
            names.append(self.name_tok())
        for n in names:
            if kind.text == "bands" and n.text not in B.surface.edge_names:
                raise UnknownName(f"unknown band {n.text!r}", n.line, n.column)
            if kind.text == "arcs" and not isinstance(self.objects.get(n.text), Arc):
                raise UnknownName(f"no arc named {n.text!r}", n.line, n.column)
        self.systems[name] = (kind.text, tuple(n.text for n in names))
        self.end_statement()


def parse_scene(text: str) -> Scene:
    """Parse and validate a scene; errors carry a line and column."""
    return _Parser(text).parse()


# -- rendering -----------------------------------------------------------------


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_point(F: FatGraph, p: BoundaryPoint) -> str:
    name = F.vertex_names[p.vertex]
    return f"{name}({p.corner})" if p.key == 0 else f"{name}({p.corner}, {_q(p.key)})"


def render_arc(F: FatGraph, a: Arc) -> str:
    return " ".join([render_point(F, a.start), *a.path, render_point(F, a.end)])


def render_loop(L: Loop) -> str:
    return "[" + ", ".join(L.cycle) + "]"


def render_word(w) -> str:
    letters = getattr(w, "letters", ())
    if not letters:
        return "id"
    return " ".join(f"t({render_loop(L)})" + ("" if e == 1 else f"^{e}") for L, e in letters)


def _lines(scene: Scene) -> Iterator[str]:
    F = scene.surface
    yield "surface {"
    for name, rot in zip(F.vertex_names, F.rotations):
        yield f"  vertex {name} = [{', '.join(rot)}];"
    for name, (a, b) in zip(F.edge_names, F.pairs):
        yield f"  edge {name} = ({a}, {b});"
    yield "}"
    yield f"monodromy {scene.monodromy_name} = {render_word(scene.book.monodromy)};"
    for name, g in scene.objects.items():
        if isinstance(g, Loop):
            yield f"loop {name} = {render_loop(g)};"
        elif isinstance(g, ImmersedArc):
            yield f"immersed {name} = {render_arc(F, g.arc)};"
        else:
            yield f"arc {name} = {render_arc(F, g)};"
    for name, (kind, names) in scene.systems.items():
        yield f"system {name} = {kind} {', '.join(names)};"


def render_scene(scene: Scene) -> str:
    return "\n".join(_lines(scene)) + "\n"


__all__ = [
    "Scene",
    "Token",
    "parse_scene",
    "render_arc",
    "render_loop",
    "render_point",
    "render_scene",
    "render_word",
    "tokenize",
]
