"""Polynomial expression parsing and system descriptors.

Grammar (LL(1) recursive descent):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := uint | 'x'uint | '(' expr ')'

Coefficients are integer literals only; '/' and '.' are rejected outright
so integrality is enforced by the grammar itself.  Unary minus is treated
as 0 - term.  Variables are x1..xn, 1-indexed.

A SystemDescriptor is the parsed form of a polynomial system plus its box
and labels; it can also be loaded from JSON where each polynomial is either
an expression string or a coefficient map {"terms": {"2,0": 3, ...}}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .mpoly import MPoly
from .rational import rat, rat_str
from .variety import Box, VarietyContext, build_context, make_box


@dataclass(frozen=True)
class _Token:
    kind: str  # INT VAR OP END
    value: int | str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "/":
            raise ParseError(
                "'/' is not allowed: coefficients must be integers", i
            )
        if ch == ".":
            raise ParseError(
                "decimal literals are not allowed: coefficients must be integers", i
            )
        if ch in "+-*^()":
            tokens.append(_Token("OP", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable needs an index, e.g. x1", i)
            tokens.append(_Token("VAR", int(text[i + 1 : j]), i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], nvars: int):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok.kind != "OP" or tok.value != op:
            raise ParseError(f"expected {op!r}", tok.pos)

    def parse_expr(self) -> MPoly:
        if self.peek().kind == "OP" and self.peek().value == "-":
            self.take()
            result = MPoly.zero(self.nvars) - self.parse_term()
        else:
            result = self.parse_term()
        while self.peek().kind == "OP" and self.peek().value in "+-":
            op = self.take().value
            term = self.parse_term()
            result = result + term if op == "+" else result - term
        return result

    def parse_term(self) -> MPoly:
        result = self.parse_factor()
        while self.peek().kind == "OP" and self.peek().value == "*":
            self.take()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> MPoly:
        base = self.parse_base()
        if self.peek().kind == "OP" and self.peek().value == "^":
            self.take()
            tok = self.take()
            if tok.kind != "INT":
                raise ParseError("exponent must be a non-negative integer", tok.pos)
            return base ** int(tok.value)
        return base

    def parse_base(self) -> MPoly:
        tok = self.take()
        if tok.kind == "INT":
            return MPoly.const(self.nvars, tok.value)
        if tok.kind == "VAR":
            idx = int(tok.value)
            if idx < 1 or idx > self.nvars:
                raise ParseError(f"unknown variable x{idx}", tok.pos)
            return MPoly.var(self.nvars, idx - 1)
        if tok.kind == "OP" and tok.value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a number, variable, or '('", tok.pos)


def parse_poly(text: str, nvars: int | None = None) -> MPoly:
    """Parse one polynomial; nvars is inferred from the largest index if omitted."""
    tokens = _tokenize(text)
    seen = [int(t.value) for t in tokens if t.kind == "VAR"]
    if nvars is None:
        nvars = max(seen, default=1)
    parser = _Parser(tokens, nvars)
    poly = parser.parse_expr()
    end = parser.take()
    if end.kind != "END":
        raise ParseError("trailing input", end.pos)
    return poly


def _poly_from_coeff_map(obj: dict, nvars: int | None) -> MPoly:
    terms = obj.get("terms")
    if not isinstance(terms, dict):
        raise ParseError("coefficient map needs a 'terms' object")
    parsed: dict[tuple[int, ...], Fraction] = {}
    width = nvars
    for key, coeff in terms.items():
        exps = tuple(int(e) for e in str(key).split(","))
        if width is None:
            width = len(exps)
        if len(exps) != width or any(e < 0 for e in exps):
            raise ParseError(f"bad exponent tuple {key!r}")
        c = rat(coeff)
        if c.denominator != 1:
            raise ParseError(f"coefficient {coeff!r} is not an integer")
        parsed[exps] = c
    if width is None:
        raise ParseError("empty coefficient map")
    return MPoly(width, parsed)


@dataclass(frozen=True)
class SystemDescriptor:
    """A parsed polynomial system: dimensions, polynomials, box, labels."""

    n: int
    m: int
    polys: tuple[MPoly, ...]
    box: Box
    labels: tuple[str, ...]

    @staticmethod
    def from_exprs(
        exprs: Sequence[str],
        n: int | None = None,
        box=None,
        labels: Sequence[str] | None = None,
    ) -> "SystemDescriptor":
        if not exprs:
            raise ParseError("system needs at least one polynomial")
        if n is None:
            n = 1
            for e in exprs:
                toks = _tokenize(e)
                n = max(n, max((int(t.value) for t in toks if t.kind == "VAR"), default=1))
        polys = tuple(parse_poly(e, n) for e in exprs)
        return SystemDescriptor._finish(n, polys, box, labels)

    @staticmethod
    def from_json(obj: dict | str) -> "SystemDescriptor":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as e:
                raise ParseError(f"bad JSON: {e}") from None
        if not isinstance(obj, dict) or "polynomials" not in obj:
            raise ParseError("system JSON needs a 'polynomials' array")
        n = obj.get("n")
        entries = obj["polynomials"]
        if n is None:
            n = 1
            for entry in entries:
                if isinstance(entry, str):
                    toks = _tokenize(entry)
                    n = max(n, max((int(t.value) for t in toks if t.kind == "VAR"), default=1))
                else:
                    poly = _poly_from_coeff_map(entry, None)
                    n = max(n, poly.nvars)
        polys = []
        for entry in entries:
            if isinstance(entry, str):
                polys.append(parse_poly(entry, n))
            elif isinstance(entry, dict):
                polys.append(_poly_from_coeff_map(entry, n))
            else:
                raise ParseError(f"bad polynomial entry {entry!r}")
        return SystemDescriptor._finish(
            int(n), tuple(polys), obj.get("box"), obj.get("labels")
        )

    @staticmethod
    def _finish(n, polys, box, labels) -> "SystemDescriptor":
        if labels is None:
            labels = tuple(f"P{i+1}" for i in range(len(polys)))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != len(polys):
                raise ParseError("labels must match polynomials")
        try:
            bx = make_box(box, n)
        except ValueError as e:
            raise ParseError(str(e)) from None
        return SystemDescriptor(n=n, m=len(polys), polys=polys, box=bx, labels=labels)

    def canonical_exprs(self) -> list[str]:
        return [p.to_text() for p in self.polys]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "polynomials": self.canonical_exprs(),
            "box": [[rat_str(lo), rat_str(hi)] for lo, hi in self.box],
            "labels": list(self.labels),
        }

    def context(self) -> VarietyContext:
        return build_context(self.polys, self.box)


def parse_box(text: str, n: int) -> Box:
    """Parse "lo,hi" (same for all dims) or "lo,hi;lo,hi;..." per dimension."""
    groups = [g for g in text.split(";") if g.strip()]
    pairs = []
    for g in groups:
        parts = [p.strip() for p in g.split(",")]
        if len(parts) != 2:
            raise ParseError(f"box interval needs two endpoints: {g!r}")
        pairs.append((parts[0], parts[1]))
    if len(pairs) == 1:
        pairs = pairs * n
    return make_box(pairs, n)
