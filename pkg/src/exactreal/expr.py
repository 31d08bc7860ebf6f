"""Arithmetic expression syntax: tokenizer, recursive-descent parser, printer.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' UINT)?
    atom   := NUMBER | NAME '(' expr ')' | NAME | '(' expr ')'

so ``-x^2`` is ``-(x^2)``; write ``(-x)^2`` for the other reading. Numbers
are integers or decimals (``0.5`` is kept exact). ``/`` always builds a
``Div`` node, so ``1/0`` parses and only fails at evaluation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

FUNCTIONS = frozenset({"exp", "sin", "cos", "atan", "sqrt"})
CONSTANTS = frozenset({"pi", "e"})


class ParseError(Exception):
    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.message = message
        self.offset = offset
        self.expected = expected
        detail = f"; expected one of {', '.join(sorted(expected))}" if expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class DecLit:
    digits: int
    scale: int  # value is digits / 10**scale


@dataclass(frozen=True)
class RatLit:
    p: int
    q: int


@dataclass(frozen=True)
class Neg:
    arg: Expr


@dataclass(frozen=True)
class Add:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow:
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: Expr


@dataclass(frozen=True)
class Const:
    name: str


Expr = Union[IntLit, DecLit, RatLit, Neg, Add, Sub, Mul, Div, Pow, Call, Const]

_TOKEN = re.compile(
    r"\s*(?:(?P<dec>\d+\.\d+)|(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)
_ATOM_START = frozenset({"number", "name", "("})


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'int', 'dec', 'name', 'op' or 'end'
    text: str
    pos: int  # character index


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            toks.append(_Tok("end", "", n))
            return toks
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", _byte_offset(text, i),
                             _ATOM_START | {"operator"})
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected, what=None):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(what or f"unexpected {found}", _byte_offset(self.text, t.pos), frozenset(expected))

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            self.fail({op})

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail({"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = Add(e, self.term())
            elif self.accept("-"):
                e = Sub(e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.unary()
        while True:
            if self.accept("*"):
                e = Mul(e, self.unary())
            elif self.accept("/"):
                e = Div(e, self.unary())
            else:
                return e

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            t = self.tok
            if t.kind != "int":
                self.fail({"unsigned integer"})
            self.i += 1
            return Pow(base, int(t.text))
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return IntLit(int(t.text))
        if t.kind == "dec":
            self.i += 1
            whole, frac = t.text.split(".")
            return DecLit(int(whole + frac), len(frac))
        if t.kind == "name":
            self.i += 1
            if self.tok.kind == "op" and self.tok.text == "(":
                if t.text not in FUNCTIONS:
                    raise ParseError(f"unknown function {t.text!r}", _byte_offset(self.text, t.pos),
                                     FUNCTIONS)
                self.i += 1
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg)
            if t.text in FUNCTIONS:
                self.fail({"("}, f"function {t.text!r} needs a parenthesized argument")
            if t.text not in CONSTANTS:
                self.i -= 1
                raise ParseError(f"unknown name {t.text!r}", _byte_offset(self.text, t.pos),
                                 CONSTANTS | FUNCTIONS)
            return Const(t.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail(_ATOM_START | {"-"})


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# Printing. Precedence levels; a higher number binds tighter.
_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}
_SYMBOL = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def _prec(e: Expr) -> int:
    if isinstance(e, RatLit):
        return 2
    return _PREC.get(type(e), 5)


def _wrap(e: Expr, cond: bool) -> str:
    s = to_source(e)
    return f"({s})" if cond else s


def to_source(e: Expr) -> str:
    """Print ``e`` so that ``parse(to_source(e))`` rebuilds the same tree.

    The one exception is ``RatLit``, which prints as a division and so comes
    back as ``Div``.
    """
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, DecLit):
        s = str(e.digits).rjust(e.scale + 1, "0")
        return f"{s[:-e.scale]}.{s[-e.scale:]}" if e.scale else s
    if isinstance(e, RatLit):
        return f"{e.p} / {e.q}"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Call):
        return f"{e.name}({to_source(e.arg)})"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, _prec(e.arg) < 3)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _prec(e.base) < 5)}^{e.exponent}"
    p = _PREC[type(e)]
    left = _wrap(e.left, _prec(e.left) < p)
    right = _wrap(e.right, _prec(e.right) <= p)
    return f"{left} {_SYMBOL[type(e)]} {right}"
