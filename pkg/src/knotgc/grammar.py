"""Text form of decorated graphs.

    graph   := "n=" ("even"|"odd") "j=" ("even"|"odd") ";" section (";" section)*
    section := "iv=" INT | "ev=" INT | "theta:" edges | "eta:" edges
             | "sloop:" loops | "dloop:" loops
    edge    := INT ">" INT | INT "-" INT "#" INT
    loop    := "@" INT "#" INT ("+"|"-")?

Whitespace between tokens is ignored.  ``format_graph`` writes the stored edge
and loop order verbatim, so ``parse_graph(format_graph(g)) == g``.
"""

from __future__ import annotations

import re

from .graph import DecoratedGraph, Edge, Loop, ParityRegime


class GraphSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<word>[a-z]+)|(?P<punct>[=;:,>\-#@+])"
)


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise self.error(f"unexpected character {text[pos]!r}", pos)
            if m.lastgroup != "ws":
                value = m.group()
                self.tokens.append((m.lastgroup, value, pos))
            pos = m.end()
        self.i = 0

    def location(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str, pos: int | None = None) -> GraphSyntaxError:
        if pos is None:
            pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        return GraphSyntaxError(message, *self.location(pos))

    def peek(self) -> str | None:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else None

    def take(self, expected: str | None = None, kind: str | None = None) -> str:
        if self.i >= len(self.tokens):
            raise self.error(f"unexpected end of input, expected {expected or kind}")
        tkind, value, _ = self.tokens[self.i]
        if expected is not None and value != expected:
            raise self.error(f"expected {expected!r}, got {value!r}")
        if kind is not None and tkind != kind:
            raise self.error(f"expected {kind}, got {value!r}")
        self.i += 1
        return value

    def take_int(self) -> int:
        return int(self.take(kind="int"))


def _parity(lex: _Lexer) -> bool:
    pos = lex.i
    word = lex.take(kind="word")
    if word not in ("even", "odd"):
        lex.i = pos
        raise lex.error(f"expected 'even' or 'odd', got {word!r}")
    return word == "odd"


def _edges(lex: _Lexer) -> list[Edge]:
    out = []
    while True:
        p = lex.take_int()
        op = lex.peek()
        if op == ">":
            lex.take(">")
            out.append(Edge(p, lex.take_int()))
        elif op == "-":
            lex.take("-")
            q = lex.take_int()
            lex.take("#")
            out.append(Edge(p, q, lex.take_int()))
        else:
            raise lex.error("expected '>' or '-' in edge")
        if lex.peek() != ",":
            return out
        lex.take(",")


def _loops(lex: _Lexer) -> list[Loop]:
    out = []
    while True:
        lex.take("@")
        v = lex.take_int()
        lex.take("#")
        label = lex.take_int()
        sign = 1
        if lex.peek() in ("+", "-"):
            sign = 1 if lex.take() == "+" else -1
        out.append(Loop(v, label, sign))
        if lex.peek() != ",":
            return out
        lex.take(",")


def parse_graph(text: str) -> DecoratedGraph:
    lex = _Lexer(text)
    lex.take("n")
    lex.take("=")
    n_odd = _parity(lex)
    lex.take("j")
    lex.take("=")
    j_odd = _parity(lex)
    parts: dict[str, object] = {}
    while lex.peek() == ";":
        lex.take(";")
        if lex.peek() is None:
            break
        start = lex.i
        name = lex.take(kind="word")
        if name in parts:
            lex.i = start
            raise lex.error(f"duplicate section {name!r}")
        if name in ("iv", "ev"):
            lex.take("=")
            parts[name] = lex.take_int()
        elif name in ("theta", "eta", "sloop", "dloop"):
            lex.take(":")
            if lex.peek() in (";", None):
                parts[name] = []
            else:
                parts[name] = _edges(lex) if name in ("theta", "eta") else _loops(lex)
        else:
            lex.i = start
            raise lex.error(f"unknown section {name!r}")
    if lex.peek() is not None:
        raise lex.error(f"unexpected token {lex.peek()!r}")
    return DecoratedGraph(
        ParityRegime(n_odd, j_odd),
        s=parts.get("iv", 0),
        t=parts.get("ev", 0),
        theta=parts.get("theta", ()),
        eta=parts.get("eta", ()),
        small_loops=parts.get("sloop", ()),
        double_loops=parts.get("dloop", ()),
    )


def _format_edge(e: Edge) -> str:
    return f"{e.p}>{e.q}" if e.label is None else f"{e.p}-{e.q}#{e.label}"


def _format_loop(lp: Loop) -> str:
    return f"@{lp.vertex}#{lp.label}{'+' if lp.sign > 0 else '-'}"


def format_graph(graph: DecoratedGraph) -> str:
    sections = [str(graph.regime), f"iv={graph.s}", f"ev={graph.t}"]
    if graph.theta:
        sections.append("theta: " + ", ".join(map(_format_edge, graph.theta)))
    if graph.eta:
        sections.append("eta: " + ", ".join(map(_format_edge, graph.eta)))
    if graph.small_loops:
        sections.append("sloop: " + ", ".join(map(_format_loop, graph.small_loops)))
    if graph.double_loops:
        sections.append("dloop: " + ", ".join(map(_format_loop, graph.double_loops)))
    return "; ".join(sections)
