"""Parser for the Prolog-fact file dialect used by every ingestion path.

Statements are ground-or-variable terms ending in a dot, one predicate per
statement: `object(ifcbeam, b1, point(0,0,0), point(4,0.3,0.3), arq).`,
`size(r1, 25).`, `data(1, ventilation(X)).`.  Numbers parse to exact
rationals; `%` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .linear import format_rational, rat_of_decimal


class FactSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{message} ({where})")


@dataclass(frozen=True)
class Var:
    """A Prolog variable (identifier starting uppercase or underscore)."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Term:
    """A functor with arguments; zero arguments is a plain atom."""

    functor: str
    args: tuple["Arg", ...] = ()
    line: int = 0

    def __str__(self) -> str:
        return term_text(self)

    def __eq__(self, other: object) -> bool:
        # source line is metadata, not identity
        return (
            isinstance(other, Term)
            and self.functor == other.functor
            and self.args == other.args
        )

    def __hash__(self) -> int:
        return hash((self.functor, self.args))


Arg = Union[Term, Var, Fraction]


def term_text(arg: Arg) -> str:
    if isinstance(arg, Fraction):
        return format_rational(arg)
    if isinstance(arg, Var):
        return arg.name
    if not arg.args:
        return arg.functor
    return f"{arg.functor}({', '.join(term_text(a) for a in arg.args)})"


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<number>-?\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<atom>[a-z]\w*)
  | (?P<var>[A-Z_]\w*)
  | (?P<punct>[(),.])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FactSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append((kind, value, line, pos - line_start + 1))
        line += value.count("\n")
        if "\n" in value:
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int, int]]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> tuple[str, str, int, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, expect: str | None = None) -> tuple[str, str, int, int]:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else ("", "", 1, 1)
            raise FactSyntaxError("unexpected end of input", last[2], last[3])
        if expect is not None and tok[1] != expect:
            raise FactSyntaxError(f"expected {expect!r}, found {tok[1]!r}", tok[2], tok[3])
        self.i += 1
        return tok

    def parse_arg(self) -> Arg:
        kind, value, line, col = self.next()
        if kind == "number":
            return rat_of_decimal(value)
        if kind == "var":
            return Var(value)
        if kind == "atom":
            nxt = self.peek()
            if nxt is not None and nxt[1] == "(":
                self.next("(")
                args = [self.parse_arg()]
                while self.peek() is not None and self.peek()[1] == ",":
                    self.next(",")
                    args.append(self.parse_arg())
                self.next(")")
                return Term(value, tuple(args), line)
            return Term(value, (), line)
        raise FactSyntaxError(f"unexpected token {value!r}", line, col)

    def parse_statement(self) -> Term:
        arg = self.parse_arg()
        if not isinstance(arg, Term):
            tok = self.tokens[self.i - 1]
            raise FactSyntaxError("statement must start with an atom", tok[2], tok[3])
        self.next(".")
        return arg


def parse_program(text: str) -> list[Term]:
    """Parse a whole fact file into its top-level terms, in file order."""
    parser = _Parser(_tokenize(text))
    terms = []
    while parser.peek() is not None:
        terms.append(parser.parse_statement())
    return terms
