"""Monadic second-order sentences over linear orders and a brute-force checker.

Grammar (ASCII)::

    phi  := "exists" v "." phi | "forall" v "." phi
          | "existsS" V "." phi | "forallS" V "." phi
          | phi "&" phi | phi "|" phi | phi "->" phi | "!" phi | atom
    atom := v "<" v | v "=" v | v "in" V | "(" phi ")"

Binding strength, tightest first: ``!``, ``&``, ``|``, ``->`` (right
associative).  A quantifier body extends as far right as possible.
The sort of a variable is fixed by the quantifier that binds it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Union

__all__ = [
    "FormulaSyntaxError",
    "Formula",
    "Less",
    "Equal",
    "In",
    "Not",
    "BinOp",
    "Quant",
    "ORACLE_BOUND",
    "parse_formula",
    "format_formula",
    "eval_finite",
]

ORACLE_BOUND = 12


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Less:
    left: str
    right: str


@dataclass(frozen=True)
class Equal:
    left: str
    right: str


@dataclass(frozen=True)
class In:
    elem: str
    set: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class BinOp:
    op: str  # "&", "|", "->"
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quant:
    kind: str  # "exists", "forall", "existsS", "forallS"
    var: str
    body: "Formula"

    @property
    def second_order(self) -> bool:
        return self.kind.endswith("S")


Formula = Union[Less, Equal, In, Not, BinOp, Quant]

_TOKEN = re.compile(r"\s*(?:(->)|([&|!<=().])|([A-Za-z_][A-Za-z0-9_']*))")
_QUANTIFIERS = ("exists", "forall", "existsS", "forallS")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                                     len(text) - len(text[pos:].lstrip()))
        tokens.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.scope: list[tuple[str, bool]] = []

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok or 'end of input'!r}", self.pos())
        self.i += 1
        return tok

    def ident(self) -> str:
        tok = self.peek()
        if not tok or not (tok[0].isalpha() or tok[0] == "_") or tok in _QUANTIFIERS or tok == "in":
            raise FormulaSyntaxError(f"expected a variable, found {tok or 'end of input'!r}", self.pos())
        self.i += 1
        return tok

    def lookup(self, name: str, second_order: bool, pos: int) -> str:
        for v, so in reversed(self.scope):
            if v == name:
                if so != second_order:
                    sort = "set" if second_order else "element"
                    raise FormulaSyntaxError(f"{name!r} is not a {sort} variable", pos)
                return name
        raise FormulaSyntaxError(f"unbound variable {name!r}", pos)

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return BinOp("->", left, self.formula())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = BinOp("|", left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = BinOp("&", left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok in _QUANTIFIERS:
            self.take()
            var = self.ident()
            self.take(".")
            self.scope.append((var, tok.endswith("S")))
            body = self.formula()
            self.scope.pop()
            return Quant(tok, var, body)
        if tok == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        return self.atom()

    def atom(self) -> Formula:
        pos = self.pos()
        left = self.ident()
        op = self.peek()
        if op == "in":
            self.take()
            rpos = self.pos()
            right = self.ident()
            return In(self.lookup(left, False, pos), self.lookup(right, True, rpos))
        if op in ("<", "="):
            self.take()
            rpos = self.pos()
            right = self.ident()
            left, right = self.lookup(left, False, pos), self.lookup(right, False, rpos)
            return Less(left, right) if op == "<" else Equal(left, right)
        raise FormulaSyntaxError(f"expected '<', '=' or 'in', found {op or 'end of input'!r}", self.pos())


def parse_formula(text: str) -> Formula:
    """Parse a closed sentence; raises :class:`FormulaSyntaxError`."""
    p = _Parser(text)
    phi = p.formula()
    if p.peek():
        raise FormulaSyntaxError(f"unexpected {p.peek()!r}", p.pos())
    return phi


def format_formula(phi: Formula) -> str:
    if isinstance(phi, Less):
        return f"{phi.left} < {phi.right}"
    if isinstance(phi, Equal):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, In):
        return f"{phi.elem} in {phi.set}"
    if isinstance(phi, Not):
        return f"!{_wrapped(phi.body)}"
    if isinstance(phi, BinOp):
        return f"{_wrapped(phi.left)} {phi.op} {_wrapped(phi.right)}"
    return f"{phi.kind} {phi.var}. {format_formula(phi.body)}"


def _wrapped(phi: Formula) -> str:
    s = format_formula(phi)
    return f"({s})" if isinstance(phi, (BinOp, Quant)) else s


# ---------------------------------------------------------------- finite semantics

Env = dict[str, int]
_Compiled = Callable[[Env], bool]


def _compile(phi: Formula, n: int) -> _Compiled:
    """Closures over an environment mapping element variables to positions
    and set variables to bitmasks over ``0..n-1``."""
    if isinstance(phi, Less):
        l, r = phi.left, phi.right
        return lambda env: env[l] < env[r]
    if isinstance(phi, Equal):
        l, r = phi.left, phi.right
        return lambda env: env[l] == env[r]
    if isinstance(phi, In):
        e, s = phi.elem, phi.set
        return lambda env: bool(env[s] >> env[e] & 1)
    if isinstance(phi, Not):
        body = _compile(phi.body, n)
        return lambda env: not body(env)
    if isinstance(phi, BinOp):
        left, right = _compile(phi.left, n), _compile(phi.right, n)
        if phi.op == "&":
            return lambda env: left(env) and right(env)
        if phi.op == "|":
            return lambda env: left(env) or right(env)
        return lambda env: (not left(env)) or right(env)
    body = _compile(phi.body, n)
    var = phi.var
    domain = range(1 << n) if phi.second_order else range(n)
    check = any if phi.kind.startswith("exists") else all

    def quant(env: Env) -> bool:
        saved = env.get(var)
        try:
            def holds(v: int) -> bool:
                env[var] = v
                return body(env)
            return check(holds(v) for v in domain)
        finally:
            if saved is None:
                env.pop(var, None)
            else:
                env[var] = saved
    return quant


def eval_finite(phi: Union[Formula, str], n: int, bound: int = ORACLE_BOUND) -> bool:
    """Truth of a sentence in the order ``({0..n-1}, <)``."""
    if isinstance(phi, str):
        phi = parse_formula(phi)
    if n < 0:
        raise ValueError("order size must be non-negative")
    if n > bound:
        raise ValueError(f"order size {n} exceeds the oracle bound {bound}")
    return _compile(phi, n)({})
