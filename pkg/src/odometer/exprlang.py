"""A small expression language for tree automorphisms.

Grammar::

    expr     := term { "*" term }
    term     := atom [ "^" exponent ]
    atom     := "tau" | "iota" | "eps" | "theta" | "id"
              | "lambda(" rational ")" | "psi(" rational ")"
              | "rigid(" cycles ")"
              | "wreath(" expr { "," expr } ";" cycles ")"
              | "conj(" expr "," expr ")"
              | "(" expr ")"
    exponent := rational | "(" rational ")"
    rational := ["-"] digits [ "/" digits ]
    cycles   := { "(" int { " " int } ")" }

``a * b`` applies ``a`` first, then ``b``; ``conj(a, b)`` is ``b^-1 a b``.
Evaluation happens against a fixed degree ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import elements as el
from .nadic import NAdic, NAdicError
from .perms import from_cycles
from .treeaut import (
    TreeAut,
    TreeAutError,
    compose,
    conj,
    identity,
    power_int,
    rigid,
    tau_pow_adic,
    wreath,
)

__all__ = [
    "ParseError",
    "EvalError",
    "Name",
    "Compose",
    "Power",
    "Conj",
    "Wreath",
    "RigidLit",
    "Paren",
    "parse",
    "parse_rational",
    "unparse",
    "evaluate",
]

CONSTANTS = ("tau", "iota", "eps", "theta", "id")
PARAMETRIC = ("lambda", "psi")


class ParseError(ValueError):
    """Syntax error; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


class EvalError(ValueError):
    """Evaluation failure tied to the source span of a subexpression."""

    def __init__(self, message: str, span: tuple[int, int], text: str | None = None):
        where = f" in {text[span[0]:span[1]]!r}" if text is not None else ""
        super().__init__(f"{message}{where} (columns {span[0] + 1}-{span[1]})")
        self.message = message
        self.span = span


Span = tuple[int, int]
Cycles = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Name:
    ident: str
    args: tuple[Fraction, ...] = ()
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Compose:
    items: tuple["Expr", ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: Fraction
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Conj:
    base: "Expr"
    by: "Expr"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Wreath:
    children: tuple["Expr", ...]
    cycles: Cycles
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class RigidLit:
    cycles: Cycles
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Paren:
    inner: "Expr"
    span: Span = field(default=(0, 0), compare=False)


Expr = Union[Name, Compose, Power, Conj, Wreath, RigidLit, Paren]


# ----------------------------------------------------------------------------
# lexing and parsing


@dataclass
class _Tok:
    kind: str  # "name", "int" or "sym"
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], i))
            i = j
        elif c in "()*^,;/-":
            toks.append(_Tok("sym", c, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", i + 1)
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.k = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def fail(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.pos + 1)

    def at(self, sym: str) -> bool:
        return self.tok.kind == "sym" and self.tok.text == sym

    def expect(self, sym: str) -> _Tok:
        if not self.at(sym):
            found = self.tok.text or "end of input"
            self.fail(f"expected {sym!r}, found {found!r}")
        tok = self.tok
        self.k += 1
        return tok

    def end_of(self, tok: _Tok) -> int:
        return tok.pos + len(tok.text)

    def parse(self) -> Expr:
        if self.tok.kind == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Expr:
        items = [self.term()]
        while self.at("*"):
            self.k += 1
            items.append(self.term())
        if len(items) == 1:
            return items[0]
        return Compose(tuple(items), (items[0].span[0], items[-1].span[1]))

    def term(self) -> Expr:
        base = self.atom()
        if not self.at("^"):
            return base
        self.k += 1
        if self.at("("):
            self.k += 1
            value = self.rational()
            end = self.end_of(self.expect(")"))
        else:
            value = self.rational()
            end = self.end_of(self.toks[self.k - 1])
        return Power(base, value, (base.span[0], end))

    def rational(self) -> Fraction:
        sign = 1
        if self.at("-"):
            self.k += 1
            sign = -1
        if self.tok.kind != "int":
            self.fail("expected a number")
        num = int(self.tok.text)
        self.k += 1
        den = 1
        if self.at("/"):
            self.k += 1
            if self.tok.kind != "int":
                self.fail("expected a denominator")
            den = int(self.tok.text)
            if den == 0:
                self.fail("zero denominator")
            self.k += 1
        return Fraction(sign * num, den)

    def cycles(self) -> Cycles:
        out = []
        while self.at("("):
            self.k += 1
            cyc = []
            while self.tok.kind == "int":
                cyc.append(int(self.tok.text))
                self.k += 1
            if not cyc:
                self.fail("expected a point in cycle")
            self.expect(")")
            out.append(tuple(cyc))
        return tuple(out)

    def atom(self) -> Expr:
        tok = self.tok
        start = tok.pos
        if self.at("("):
            self.k += 1
            inner = self.expr()
            end = self.end_of(self.expect(")"))
            return Paren(inner, (start, end))
        if tok.kind != "name":
            self.fail(f"expected an element, found {tok.text or 'end of input'!r}")
        ident = tok.text
        self.k += 1
        if ident in CONSTANTS:
            return Name(ident, (), (start, self.end_of(tok)))
        if ident not in PARAMETRIC + ("rigid", "wreath", "conj"):
            self.fail(f"unknown name {ident!r}", tok)
        self.expect("(")
        if ident in PARAMETRIC:
            value = self.rational()
            end = self.end_of(self.expect(")"))
            return Name(ident, (value,), (start, end))
        if ident == "rigid":
            cyc = self.cycles()
            end = self.end_of(self.expect(")"))
            return RigidLit(cyc, (start, end))
        if ident == "conj":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            end = self.end_of(self.expect(")"))
            return Conj(a, b, (start, end))
        children = [self.expr()]
        while self.at(","):
            self.k += 1
            children.append(self.expr())
        self.expect(";")
        cyc = self.cycles()
        end = self.end_of(self.expect(")"))
        return Wreath(tuple(children), cyc, (start, end))


def parse(text: str) -> Expr:
    """Parse an expression; raises :class:`ParseError` with a 1-based column."""
    return _Parser(text).parse()


def parse_rational(text: str, n: int) -> NAdic:
    """Parse ``[-]digits[/digits]`` as an n-adic integer of degree ``n``."""
    p = _Parser(text)
    value = p.rational()
    if p.tok.kind != "end":
        p.fail(f"unexpected {p.tok.text!r}")
    return NAdic(value, n)


# ----------------------------------------------------------------------------
# unparsing


def _rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cycles(cycles: Cycles) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def unparse(node: Expr) -> str:
    """Canonical text for an AST."""
    if isinstance(node, Name):
        if node.args:
            return f"{node.ident}({', '.join(_rat(a) for a in node.args)})"
        return node.ident
    if isinstance(node, Compose):
        return " * ".join(unparse(x) for x in node.items)
    if isinstance(node, Power):
        return f"{unparse(node.base)}^{_rat(node.exponent)}"
    if isinstance(node, Conj):
        return f"conj({unparse(node.base)}, {unparse(node.by)})"
    if isinstance(node, Wreath):
        cyc = _cycles(node.cycles)
        return f"wreath({', '.join(unparse(c) for c in node.children)};{' ' + cyc if cyc else ''})"
    if isinstance(node, RigidLit):
        return f"rigid({_cycles(node.cycles)})"
    if isinstance(node, Paren):
        return f"({unparse(node.inner)})"
    raise TypeError(f"not an expression node: {node!r}")


# ----------------------------------------------------------------------------
# evaluation


def _is_tau(node: Expr) -> bool:
    while isinstance(node, Paren):
        node = node.inner
    return isinstance(node, Name) and node.ident == "tau"


class _Evaluator:
    def __init__(self, n: int, text: str | None):
        self.n = n
        self.text = text

    def fail(self, message: str, node: Expr):
        raise EvalError(message, node.span, self.text)

    def perm(self, cycles: Cycles, node: Expr):
        try:
            return from_cycles(self.n, cycles)
        except ValueError as exc:
            self.fail(str(exc), node)

    def adic(self, value: Fraction, node: Expr) -> NAdic:
        try:
            return NAdic(value, self.n)
        except NAdicError as exc:
            self.fail(str(exc), node)

    def run(self, node: Expr) -> TreeAut:
        try:
            return self.eval(node)
        except (NAdicError, TreeAutError) as exc:
            self.fail(str(exc), node)

    def eval(self, node: Expr) -> TreeAut:
        n = self.n
        if isinstance(node, Paren):
            return self.eval(node.inner)
        if isinstance(node, Name):
            if node.ident == "tau":
                return el.tau(n)
            if node.ident == "iota":
                return el.iota(n)
            if node.ident == "eps":
                return el.eps(n)
            if node.ident == "id":
                return identity(n)
            if node.ident == "theta":
                if n != 4:
                    self.fail("theta is only defined for degree 4", node)
                return el.theta4()
            value = self.adic(node.args[0], node)
            try:
                if node.ident == "lambda":
                    return el.lambda_(n, value)
                if n != 4:
                    self.fail("psi is only defined for degree 4", node)
                return el.psi4(value)
            except (el.ConjugationError, NAdicError) as exc:
                self.fail(str(exc), node)
        if isinstance(node, Compose):
            return compose(*(self.eval(x) for x in node.items), degree=n)
        if isinstance(node, Power):
            x = node.exponent
            if x.denominator == 1:
                return power_int(self.eval(node.base), x.numerator)
            if not _is_tau(node.base):
                self.fail("fractional exponents are only allowed on tau", node)
            return tau_pow_adic(n, self.adic(x, node))
        if isinstance(node, Conj):
            return conj(self.eval(node.base), self.eval(node.by))
        if isinstance(node, Wreath):
            if len(node.children) != n:
                self.fail(f"wreath needs {n} children, got {len(node.children)}", node)
            kids = [self.eval(c) for c in node.children]
            return wreath(kids, self.perm(node.cycles, node))
        if isinstance(node, RigidLit):
            return rigid(self.perm(node.cycles, node))
        raise TypeError(f"not an expression node: {node!r}")


def evaluate(expr: str | Expr, n: int) -> TreeAut:
    """Evaluate text or an AST at degree ``n``.

    Raises :class:`ParseError` for bad syntax and :class:`EvalError` for
    well-formed expressions that do not denote an element of degree ``n``.
    """
    if n < 2:
        raise ValueError(f"degree must be at least 2, got {n}")
    text = expr if isinstance(expr, str) else None
    node = parse(expr) if isinstance(expr, str) else expr
    return _Evaluator(n, text).run(node)
