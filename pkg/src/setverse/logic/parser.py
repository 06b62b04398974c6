"""Recursive-descent parser for the ASCII formula grammar.

::

    program  := ("const" NAME ("," NAME)* ";")* formula
    formula  := imp ("<->" imp)*
    imp      := or ("->" imp)?
    or       := and ("|" and)*
    and      := unary ("&" unary)*
    unary    := "!" unary | quant | "(" formula ")" | atom
    quant    := ("forall" | "exists") NAME ("in" term)? "."? formula
    atom     := term "in" ("[" NAME "]")? term | term "sub" term
              | term "=" term | term "=" "(" term "," term ")"
    term     := NAME | NUMBER | HF-literal

Names declared with ``const`` (or passed in ``constants``) are constants,
every other name is a variable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from ..errors import FormulaSyntaxError, LiteralSyntaxError, UnboundVariableError
from ..hf import _parse_value, nat
from .formula import (
    And,
    Const,
    Equality,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Lit,
    Membership,
    Not,
    Or,
    PairEq,
    Subset,
    Term,
    Var,
    free_vars,
)

KEYWORDS = {"forall", "exists", "in", "sub", "const"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|[()!&|=,.;\[\]])
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str  # op, num, name, lit, eof
    text: str
    offset: int
    value: object = None


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos] == "{":
            try:
                value, end = _parse_value(text, pos)
            except LiteralSyntaxError as exc:
                raise FormulaSyntaxError(f"bad set literal: {exc}", exc.offset) from None
            tokens.append(Token("lit", text[pos:end], pos, value))
            pos = end
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, constants: Iterable[str]):
        self.tokens = tokenize(text)
        self.i = 0
        self.constants = set(constants)

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FormulaSyntaxError(f"{message}, found {found}", tok.offset)

    def at(self, text: str) -> bool:
        tok = self.tok
        return tok.kind in ("op", "name") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def name(self) -> str:
        tok = self.tok
        if tok.kind != "name" or tok.text in KEYWORDS:
            self.error("expected a name")
        self.i += 1
        return tok.text

    def program(self) -> Formula:
        while self.accept("const"):
            self.constants.add(self.name())
            while self.accept(","):
                self.constants.add(self.name())
            self.expect(";")
        f = self.formula()
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")
        return f

    def formula(self) -> Formula:
        left = self.implication()
        while self.accept("<->"):
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.accept("|"):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.unary())
        if self.at("forall") or self.at("exists"):
            cls = ForAll if self.tok.text == "forall" else Exists
            self.i += 1
            var = self.name()
            bound = self.term() if self.accept("in") else None
            self.accept(".")
            return cls(var, self.formula(), bound)
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def term(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Lit(nat(int(tok.text)))
        if tok.kind == "lit":
            self.i += 1
            return Lit(tok.value)
        name = self.name()
        return Const(name) if name in self.constants else Var(name)

    def atom(self) -> Formula:
        left = self.term()
        if self.accept("in"):
            rel = None
            if self.accept("["):
                rel = self.name()
                self.expect("]")
            return Membership(left, self.term(), rel)
        if self.accept("sub"):
            return Subset(left, self.term())
        if self.accept("="):
            if self.accept("("):
                first = self.term()
                self.expect(",")
                second = self.term()
                self.expect(")")
                return PairEq(left, first, second)
            return Equality(left, self.term())
        self.error("expected 'in', 'sub' or '='")


def parse_formula(text: str, *, constants: Iterable[str] = (), closed: bool = False) -> Formula:
    """Parse ``text``; with ``closed=True`` reject formulas with free variables."""
    f = _Parser(text, constants).program()
    if closed:
        free = free_vars(f)
        if free:
            raise UnboundVariableError(f"free variables in closed formula: {', '.join(free)}")
    return f
