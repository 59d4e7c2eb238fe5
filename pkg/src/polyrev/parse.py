"""Recursive-descent parser for map definitions and candidate maps.

Map files hold two definitions separated by ``;`` or newlines::

    p1 = -y
    p2 = 2*x - 2*x^2      # comments run to end of line

``p1`` is written in ``y``; ``p2`` in ``x`` or ``y``.  Candidate maps are
written ``x -> <expr>, y -> <expr>`` and may use both variables.
Coefficients are exact rationals; division is only allowed by constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .maps import GeneralisedStandardMap, PlanarPolyMap
from .poly import BiPoly, UniPoly


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col, self.reason = line, col, message
        super().__init__(f"line {line}, column {col}: {message}" if line else message)


@dataclass
class Token:
    kind: str  # NUM, NAME, OP, ARROW, SEP, END
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<arrow>->)|(?P<pow>\*\*)|(?P<op>[-+*/^()=;,])"
)


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            out.append(Token("SEP", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "num":
            out.append(Token("NUM", s, line, col))
        elif kind == "name":
            out.append(Token("NAME", s, line, col))
        elif kind == "arrow":
            out.append(Token("ARROW", s, line, col))
        elif kind == "pow":
            out.append(Token("OP", "^", line, col))
        elif kind == "op":
            out.append(Token("SEP" if s == ";" else "OP", s, line, col))
        pos = m.end()
    out.append(Token("END", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, tokens: List[Token], variables: Tuple[str, ...]):
        self.toks = tokens
        self.i = 0
        self.variables = variables

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.cur
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        t = self.cur
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            self.error(f"expected {want!r}, found {t.text or 'end of input'!r}")
        return self.advance()

    def at_op(self, *ops) -> bool:
        return self.cur.kind == "OP" and self.cur.text in ops

    # expr := term (('+'|'-') term)*
    def expr(self) -> BiPoly:
        acc = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    # term := unary (('*'|'/') unary)*
    def term(self) -> BiPoly:
        acc = self.unary()
        while self.at_op("*", "/"):
            tok = self.advance()
            rhs = self.unary()
            if tok.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    self.error("division by a non-constant expression", tok)
                d = rhs.constant_value()
                if d == 0:
                    self.error("division by zero", tok)
                acc = acc * (1 / d)
        return acc

    # unary := ('+'|'-') unary | power
    def unary(self) -> BiPoly:
        if self.at_op("-"):
            self.advance()
            return -self.unary()
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    # power := atom ('^' INT)?
    def power(self) -> BiPoly:
        base = self.atom()
        if self.at_op("^"):
            tok = self.advance()
            if self.cur.kind != "NUM":
                self.error("exponent must be a non-negative integer literal", tok)
            n = int(self.advance().text)
            if n > 10_000:
                self.error("exponent too large", tok)
            base = base ** n
        return base

    def atom(self) -> BiPoly:
        t = self.cur
        if t.kind == "NUM":
            self.advance()
            return BiPoly.constant(int(t.text))
        if t.kind == "NAME":
            self.advance()
            if t.text not in self.variables:
                allowed = " or ".join(self.variables)
                self.error(f"wrong variable {t.text!r} (expected {allowed})", t)
            return BiPoly.x() if t.text == "x" else BiPoly.y()
        if self.at_op("("):
            self.advance()
            e = self.expr()
            self.expect("OP", ")")
            return e
        self.error(f"unexpected {t.text or 'end of input'!r}")


def parse_expr(text: str, variables: Tuple[str, ...] = ("x", "y")) -> BiPoly:
    p = _Parser(tokenize(text), variables)
    while p.cur.kind == "SEP":
        p.advance()
    e = p.expr()
    while p.cur.kind == "SEP":
        p.advance()
    p.expect("END")
    return e


def _to_uni(e: BiPoly, tok: Token, name: str) -> UniPoly:
    if e.only_in("x"):
        return e.to_uni("x")
    if e.only_in("y"):
        return e.to_uni("y")
    raise ParseError(f"{name} must use a single variable", tok.line, tok.col)


def parse_map(text: str) -> GeneralisedStandardMap:
    """Parse ``p1 = <expr>; p2 = <expr>`` into a generalised standard map."""
    p = _Parser(tokenize(text), ())
    defs = {}
    while True:
        while p.cur.kind == "SEP":
            p.advance()
        if p.cur.kind == "END":
            break
        name_tok = p.expect("NAME")
        name = name_tok.text
        if name not in ("p1", "p2"):
            p.error(f"unknown definition {name!r} (expected p1 or p2)", name_tok)
        if name in defs:
            p.error(f"{name} defined twice", name_tok)
        p.expect("OP", "=")
        p.variables = ("y",) if name == "p1" else ("x", "y")
        start = p.cur
        e = p.expr()
        defs[name] = _to_uni(e, start, name)
        if p.cur.kind not in ("SEP", "END"):
            p.error(f"unexpected {p.cur.text!r}")
    for name in ("p1", "p2"):
        if name not in defs:
            raise ParseError(f"missing definition of {name}")
    return GeneralisedStandardMap(defs["p1"], defs["p2"])


def parse_candidate_components(text: str) -> Tuple[BiPoly, BiPoly]:
    """Parse ``x -> <expr>, y -> <expr>`` into the two component polynomials."""
    p = _Parser(tokenize(text), ("x", "y"))
    comps = {}
    while True:
        tok = p.expect("NAME")
        if tok.text not in ("x", "y") or tok.text in comps:
            p.error(f"expected a component name x or y, found {tok.text!r}", tok)
        p.expect("ARROW")
        comps[tok.text] = p.expr()
        if p.at_op(","):
            p.advance()
            continue
        while p.cur.kind == "SEP":
            p.advance()
        if p.cur.kind == "END":
            break
        if p.cur.kind == "NAME":
            continue
        p.error(f"unexpected {p.cur.text!r}")
    if set(comps) != {"x", "y"}:
        raise ParseError("candidate map needs both x -> ... and y -> ...")
    return comps["x"], comps["y"]


def parse_candidate(text: str) -> PlanarPolyMap:
    """Parse a bivariate candidate map and solve for its polynomial inverse."""
    return PlanarPolyMap.from_forward(*parse_candidate_components(text))


def format_map(L: GeneralisedStandardMap) -> str:
    return str(L)


def format_components(F: PlanarPolyMap, which: str = "forward") -> str:
    P, Q = getattr(F, which)
    return f"x -> {P}, y -> {Q}"
