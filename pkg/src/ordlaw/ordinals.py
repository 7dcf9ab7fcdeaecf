"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is a finite sum ``w^e1*c1 + ... + w^ek*ck`` with strictly
decreasing exponents ``e1 > ... > ek`` (themselves ordinals) and positive
integer coefficients.  The empty sum is 0.

Besides comparison and the natural (Hessenberg) sum the module provides the
additive norm (number of occurrences of ``w``), the Matula coding into the
positive integers, the split used by Buchi-style recognizers and a brute
force enumeration of all ordinals of a given norm below a bound.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Union

__all__ = [
    "Ordinal",
    "SymbolicSegment",
    "Segment",
    "OrdinalSyntaxError",
    "ZERO",
    "ONE",
    "OMEGA",
    "SEGMENT_TAGS",
    "ordinal",
    "omega_power",
    "parse_ordinal",
    "parse_segment",
    "format_ordinal",
    "format_segment",
    "compare",
    "natural_sum",
    "ordinal_add",
    "omega_power_times",
    "norm",
    "cnf_split",
    "segment_pieces",
    "is_omega_power",
    "matula_encode",
    "matula_decode",
    "nth_prime",
    "prime_index",
    "enumerate_by_norm",
    "ordinals_of_norm",
]


@functools.total_ordering
@dataclass(frozen=True, eq=True)
class Ordinal:
    """Cantor normal form term; ``terms`` holds ``(exponent, coefficient)``."""

    terms: tuple[tuple["Ordinal", int], ...] = ()
    _norm: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = 0
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(coeff, int) or coeff < 1:
                raise ValueError(f"coefficient must be a positive integer, got {coeff!r}")
            if prev is not None and compare(prev, exp) <= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp
            n += coeff * (1 + exp._norm)
        object.__setattr__(self, "_norm", n)

    def __lt__(self, other: "Ordinal") -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    def __int__(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("0 has no leading exponent")
        return self.terms[0][0]

    @property
    def last_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("0 has no last exponent")
        return self.terms[-1][0]

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return ordinal_add(self, other)


@dataclass(frozen=True)
class SymbolicSegment:
    """A counting-only segment: ``E0`` (epsilon_0), ``G0`` (Gamma_0) or the
    Bachmann-Howard classes ``BH-OT`` / ``BH-CT``."""

    tag: str

    def __post_init__(self) -> None:
        if self.tag not in SEGMENT_TAGS:
            raise ValueError(f"unknown segment tag {self.tag!r}")

    def __str__(self) -> str:
        return self.tag


SEGMENT_TAGS = ("E0", "G0", "BH-OT", "BH-CT")
Segment = Union[Ordinal, SymbolicSegment]

ZERO = Ordinal()


def ordinal(n: int) -> Ordinal:
    """The finite ordinal ``n``."""
    if n < 0:
        raise ValueError("negative ordinal")
    return Ordinal(((ZERO, n),)) if n else ZERO


def omega_power(exp: Ordinal, coeff: int = 1) -> Ordinal:
    """``w^exp * coeff``."""
    return Ordinal(((exp, coeff),)) if coeff else ZERO


ONE = ordinal(1)
OMEGA = omega_power(ONE)


def compare(x: Ordinal, y: Ordinal) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    if x is y:
        return 0
    for (ex, cx), (ey, cy) in zip(x.terms, y.terms):
        c = compare(ex, ey)
        if c:
            return c
        if cx != cy:
            return -1 if cx < cy else 1
    lx, ly = len(x.terms), len(y.terms)
    return (lx > ly) - (lx < ly)


def _from_pairs(pairs: dict[Ordinal, int]) -> Ordinal:
    items = sorted(((e, c) for e, c in pairs.items() if c), key=lambda t: t[0], reverse=True)
    return Ordinal(tuple(items))


def natural_sum(x: Ordinal, y: Ordinal) -> Ordinal:
    """Hessenberg sum: merge the summand multisets and re-sort."""
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    acc: dict[Ordinal, int] = {}
    for e, c in x.terms + y.terms:
        acc[e] = acc.get(e, 0) + c
    return _from_pairs(acc)


def ordinal_add(x: Ordinal, y: Ordinal) -> Ordinal:
    """Ordinary (non-commutative) ordinal addition."""
    if y.is_zero:
        return x
    lead, coeff = y.terms[0]
    kept = [t for t in x.terms if compare(t[0], lead) > 0]
    for e, c in x.terms:
        if compare(e, lead) == 0:
            coeff += c
    return Ordinal(tuple(kept) + ((lead, coeff),) + y.terms[1:])


def omega_power_times(k: int, x: Ordinal) -> Ordinal:
    """``w^k * x`` for finite ``k``: every exponent ``e`` becomes ``k + e``."""
    if k == 0:
        return x
    fk = ordinal(k)
    return Ordinal(tuple((ordinal_add(fk, e), c) for e, c in x.terms))


def norm(x: Ordinal) -> int:
    """Number of occurrences of ``w`` in the hereditary normal form of ``x``."""
    return x._norm


def is_omega_power(x: Segment) -> bool:
    return isinstance(x, Ordinal) and len(x.terms) == 1 and x.terms[0][1] == 1


def cnf_split(x: Ordinal, r: int) -> tuple[Ordinal, tuple[int, ...]]:
    """Write ``x = w^(r+1) * tail + w^r*k_r + ... + k_0``.

    Returns ``(tail, (k_r, ..., k_0))``.  Finite exponents ``e > r`` shift down
    to ``e - (r+1)``; infinite exponents are unchanged since ``(r+1) + e = e``.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    coeffs = [0] * (r + 1)
    tail = []
    for e, c in x.terms:
        if e.is_finite:
            v = int(e)
            if v <= r:
                coeffs[r - v] = c
            else:
                tail.append((ordinal(v - r - 1), c))
        else:
            tail.append((e, c))
    return Ordinal(tuple(tail)), tuple(coeffs)


def segment_pieces(beta: Ordinal) -> list[tuple[Ordinal, Ordinal]]:
    """Disjoint windows ``[P, P + w^g)`` covering ``[0, beta)``.

    Returns ``(P, g)`` pairs ordered from the top of ``beta`` down.  For
    ``beta = w^g1*d1 + ... + w^gs*ds`` the pieces are
    ``w^g1*d1 + ... + w^gj*(dj - k) + delta`` with ``delta < w^gj``.
    """
    pieces = []
    prefix: list[tuple[Ordinal, int]] = []
    for g, d in beta.terms:
        for k in range(1, d + 1):
            head = prefix + ([(g, d - k)] if d - k else [])
            pieces.append((Ordinal(tuple(head)), g))
        prefix.append((g, d))
    return pieces


# ---------------------------------------------------------------- parsing

class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1) is not None:
                self.toks.append((m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.toks.append((m.group(2), m.start(2)))
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self) -> int:
        return self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)

    def error(self, msg: str) -> OrdinalSyntaxError:
        return OrdinalSyntaxError(msg, self.text, self.pos())

    def take(self, tok: str | None = None) -> str:
        t = self.peek()
        if t is None or (tok is not None and t != tok):
            raise self.error(f"expected {tok or 'token'!r}")
        self.i += 1
        return t

    def nat(self) -> int:
        t = self.peek()
        if t is None or not t.isdigit():
            raise self.error("expected a natural number")
        self.i += 1
        return int(t)

    def ordinal(self) -> Ordinal:
        x = self.term()
        while self.peek() == "+":
            self.take("+")
            x = ordinal_add(x, self.term())
        return x

    def term(self) -> Ordinal:
        t = self.peek()
        if t is not None and t.isdigit():
            return ordinal(self.nat())
        if t != "w":
            raise self.error("expected 'w' or a natural number")
        self.take("w")
        exp = ONE
        if self.peek() == "^":
            self.take("^")
            exp = self.factor()
        coeff = 1
        if self.peek() == "*":
            self.take("*")
            if (self.peek() or "").strip("0") == "":
                raise self.error("coefficient must be a positive integer")
            coeff = self.nat()
        return omega_power(exp, coeff)

    def factor(self) -> Ordinal:
        t = self.peek()
        if t is not None and t.isdigit():
            return ordinal(self.nat())
        if t == "w":
            self.take("w")
            return OMEGA
        if t == "(":
            self.take("(")
            x = self.ordinal()
            self.take(")")
            return x
        raise self.error("expected exponent")


def parse_ordinal(text: str) -> Ordinal:
    """Parse the ASCII term grammar, e.g. ``"w^(w*2+1)*3+w+4"``.

    Summands are combined with ordinal addition, so ``"w+w"`` is ``w*2`` and
    ``"1+w"`` is ``w``.
    """
    p = _Parser(text)
    if p.peek() is None:
        raise p.error("empty input")
    x = p.ordinal()
    if p.peek() is not None:
        raise p.error(f"unexpected {p.peek()!r}")
    return x


_SEGMENT_ALIASES = {
    "e0": "E0", "E0": "E0", "eps0": "E0",
    "g0": "G0", "G0": "G0",
    "bh-ot": "BH-OT", "BH-OT": "BH-OT",
    "bh-ct": "BH-CT", "BH-CT": "BH-CT",
}


def parse_segment(text: str) -> Segment:
    """An ordinal term or one of the segment names ``e0``, ``G0``, ``BH-OT``, ``BH-CT``."""
    key = text.strip()
    tag = _SEGMENT_ALIASES.get(key) or _SEGMENT_ALIASES.get(key.lower())
    if tag:
        return SymbolicSegment(tag)
    return parse_ordinal(key)


def format_ordinal(x: Ordinal) -> str:
    if x.is_zero:
        return "0"
    parts = []
    for e, c in x.terms:
        if e.is_zero:
            parts.append(str(c))
            continue
        if e == ONE:
            s = "w"
        elif e.is_finite or e == OMEGA:
            s = f"w^{format_ordinal(e)}"
        else:
            s = f"w^({format_ordinal(e)})"
        parts.append(s if c == 1 else f"{s}*{c}")
    return "+".join(parts)


def format_segment(x: Segment) -> str:
    return x.tag if isinstance(x, SymbolicSegment) else format_ordinal(x)


# ---------------------------------------------------------------- primes / Matula

class _Primes:
    """Growable sieve: ``primes[k-1]`` is the k-th prime (so p_1 = 2)."""

    def __init__(self) -> None:
        self.limit = 1
        self.primes: list[int] = []
        self.index: dict[int, int] = {}

    def extend(self, limit: int) -> None:
        if limit <= self.limit:
            return
        limit = max(limit, 2 * self.limit)
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, int(limit**0.5) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
        self.primes = [p for p in range(2, limit + 1) if sieve[p]]
        self.index = {p: k for k, p in enumerate(self.primes, 1)}
        self.limit = limit


_PRIMES = _Primes()


def nth_prime(k: int) -> int:
    """k-th prime with ``nth_prime(1) == 2``."""
    if k < 1:
        raise ValueError("prime index starts at 1")
    while len(_PRIMES.primes) < k:
        _PRIMES.extend(max(64, 2 * _PRIMES.limit))
    return _PRIMES.primes[k - 1]


def prime_index(p: int) -> int:
    """Inverse of :func:`nth_prime`; raises for non-primes."""
    _PRIMES.extend(p)
    try:
        return _PRIMES.index[p]
    except KeyError:
        raise ValueError(f"{p} is not prime") from None


def _factorize(n: int) -> list[int]:
    # trial division by the sieve; fine for the census range
    out = []
    _PRIMES.extend(int(n**0.5) + 2)
    for p in _PRIMES.primes:
        if p * p > n:
            break
        while n % p == 0:
            out.append(p)
            n //= p
    if n > 1:
        out.append(n)
    return out


@functools.lru_cache(maxsize=None)
def matula_encode(x: Ordinal) -> int:
    """``M(0) = 1`` and ``M(x) = prod p_{M(e)}`` over the summands ``w^e`` of ``x``."""
    m = 1
    for e, c in x.terms:
        m *= nth_prime(matula_encode(e)) ** c
    return m


@functools.lru_cache(maxsize=65536)
def matula_decode(n: int) -> Ordinal:
    if n < 1:
        raise ValueError("Matula codes are positive integers")
    acc: dict[Ordinal, int] = {}
    for p in _factorize(n):
        e = matula_decode(prime_index(p))
        acc[e] = acc.get(e, 0) + 1
    return _from_pairs(acc)


# ---------------------------------------------------------------- enumeration

ENUM_BOUND = 14


@functools.lru_cache(maxsize=None)
def ordinals_of_norm(n: int) -> tuple[Ordinal, ...]:
    """All ordinals below epsilon_0 of norm ``n``, in ascending order."""
    if n == 0:
        return (ZERO,)
    out = []
    # leading summand w^e (norm m) followed by a rest whose exponents are <= e
    for m in range(1, n + 1):
        for e in ordinals_of_norm(m - 1):
            for rest in ordinals_of_norm(n - m):
                if rest.is_zero:
                    out.append(Ordinal(((e, 1),)))
                    continue
                c = compare(rest.terms[0][0], e)
                if c < 0:
                    out.append(Ordinal(((e, 1),) + rest.terms))
                elif c == 0:
                    out.append(Ordinal(((e, rest.terms[0][1] + 1),) + rest.terms[1:]))
    out.sort()
    return tuple(out)


def enumerate_by_norm(beta: Segment, n: int, bound: int = ENUM_BOUND) -> list[Ordinal]:
    """``{a < beta : N(a) = n}`` by brute force, ascending."""
    if n > bound:
        raise ValueError(f"norm {n} exceeds the enumeration bound {bound}")
    if n < 0:
        return []
    everything = ordinals_of_norm(n)
    if isinstance(beta, SymbolicSegment):
        if beta.tag != "E0":
            raise ValueError(f"enumeration is only supported below E0, not {beta.tag}")
        return list(everything)
    return [a for a in everything if compare(a, beta) < 0]
