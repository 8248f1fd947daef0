"""Identity language over the signature {*, \\, /}.

Grammar (whitespace-insensitive):

    identity := term '=' term
    term     := factor | factor op factor
    op       := '*' | '\\' | '/'
    factor   := variable | '(' term ')'

All three operators share one precedence level and are non-associative:
nested applications must be parenthesized, so "x*y*z" is a syntax error
while "(x*y)*z" is fine.  Variables are alphabetic identifiers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Union

from .magma import CayleyTable, Quasigroup


class Op(Enum):
    MUL = "*"
    LDIV = "\\"
    RDIV = "/"


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Node:
    op: Op
    left: "Term"
    right: "Term"


Term = Union[Var, Node]

_OP_CHARS = {"*": Op.MUL, "\\": Op.LDIV, "/": Op.RDIV}


class IdentitySyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    variables: tuple[str, ...]  # first-occurrence order across lhs then rhs

    @property
    def uses_division(self) -> bool:
        return _uses_division(self.lhs) or _uses_division(self.rhs)


def _uses_division(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    if t.op is not Op.MUL:
        return True
    return _uses_division(t.left) or _uses_division(t.right)


def _collect_variables(t: Term, acc: list[str]) -> None:
    if isinstance(t, Var):
        if t.name not in acc:
            acc.append(t.name)
    else:
        _collect_variables(t.left, acc)
        _collect_variables(t.right, acc)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def identity(self) -> Identity:
        lhs = self.term("left-hand side")
        if self._peek() != "=":
            raise IdentitySyntaxError("expected '='", self.pos)
        self.pos += 1
        rhs = self.term("right-hand side")
        if self._peek() != "":
            raise IdentitySyntaxError("unexpected trailing input", self.pos)
        names: list[str] = []
        _collect_variables(lhs, names)
        _collect_variables(rhs, names)
        return Identity(lhs, rhs, tuple(names))

    def term(self, side: str) -> Term:
        left = self.factor(side)
        ch = self._peek()
        if ch not in _OP_CHARS:
            return left
        op = _OP_CHARS[ch]
        self.pos += 1
        right = self.factor(side)
        if self._peek() in _OP_CHARS:
            raise IdentitySyntaxError(
                "chained operators require parentheses", self.pos
            )
        return Node(op, left, right)

    def factor(self, side: str) -> Term:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self.term(side)
            if self._peek() != ")":
                raise IdentitySyntaxError("unbalanced parenthesis", self.pos)
            self.pos += 1
            return inner
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isalpha():
                self.pos += 1
            return Var(self.text[start:self.pos])
        if ch == "":
            raise IdentitySyntaxError(f"empty {side}: expected a term", self.pos)
        raise IdentitySyntaxError(f"expected a variable or '('", self.pos)


def parse_identity(text: str) -> Identity:
    return _Parser(text).identity()


def format_term(t: Term) -> str:
    """Render a term; children that are themselves nodes get parentheses."""

    def fmt(s: Term) -> str:
        if isinstance(s, Var):
            return s.name
        return "(" + fmt(s.left) + s.op.value + fmt(s.right) + ")"

    if isinstance(t, Var):
        return t.name
    return fmt(t.left) + t.op.value + fmt(t.right)


def format_identity(ident: Identity) -> str:
    return f"{format_term(ident.lhs)} = {format_term(ident.rhs)}"


def eval_term(
    t: Term,
    table: CayleyTable,
    assignment: dict[str, int],
    divisions: Optional[Quasigroup] = None,
) -> int:
    """Bottom-up evaluation of a term over a finite table.

    Division nodes need a Quasigroup (for its precomputed division tables);
    evaluating one without raises ValueError.
    """
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise ValueError(f"unassigned variable {t.name!r}") from None
    a = eval_term(t.left, table, assignment, divisions)
    b = eval_term(t.right, table, assignment, divisions)
    if t.op is Op.MUL:
        return table.entries[a][b]
    if divisions is None:
        raise ValueError("division node requires a quasigroup (Latin table)")
    if t.op is Op.LDIV:
        return divisions.ldiv_table[a][b]
    return divisions.rdiv_table[a][b]


@dataclass(frozen=True)
class HoldsVerdict:
    holds: bool
    witness: Optional[dict[str, int]]


def holds(model: Union[CayleyTable, Quasigroup], ident: Identity) -> HoldsVerdict:
    """Decide universal validity of an identity over a finite table.

    Scans all n^v assignments in lexicographic order and reports the first
    failing assignment, if any.
    """
    if isinstance(model, Quasigroup):
        table, q = model.table, model
    else:
        table = model
        q = Quasigroup.from_table(table) if ident.uses_division else None
    n = table.order
    names = ident.variables
    for vals in itertools.product(range(n), repeat=len(names)):
        asg = dict(zip(names, vals))
        if eval_term(ident.lhs, table, asg, q) != eval_term(ident.rhs, table, asg, q):
            return HoldsVerdict(False, asg)
    return HoldsVerdict(True, None)


N1_TEXT = "((x*y)*z)*y = x*(y*(z*y))"


@lru_cache(maxsize=1)
def builtin_n1() -> Identity:
    """The Moufang-type law ((x*y)*z)*y = x*(y*(z*y))."""
    return parse_identity(N1_TEXT)
