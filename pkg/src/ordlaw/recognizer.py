"""Finite recognizers for monadic properties of ordinals.

A recognizer ``(K, a, W, F_0..F_{r+1})`` accepts ``x`` with
``cnf_split(x, r) = (a0, (k_r..k_0))`` when::

    F_0^k0 ( ... F_r^kr ( F_{r+1}^sgn(a0) (a) ) ... )  in  W

so ``F_{r+1}`` acts first and ``F_0`` last.  Valid recognizers satisfy
``F_{r+1} o F_{r+1} = F_{r+1}`` and ``F_j o F_i = F_j`` for ``i < j <= r``,
mirroring ``w^i + w^j = w^j``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .counting import TRUNCATION_CAP
from .mso import Formula, parse_formula
from .ordinals import Ordinal, Segment, SymbolicSegment, cnf_split, format_segment, is_omega_power
from .semilinear import LinearSet, SemilinearSet, has_tail_room
from .tauberian import DensityReport, density_series, semilinear_limit

__all__ = [
    "Recognizer",
    "Lasso",
    "LASSO_CAP",
    "SPECTRUM_CAP",
    "validate_recognizer",
    "transformation_lasso",
    "eval_recognizer",
    "spectrum",
    "asymptotic_probability",
    "combine",
    "builtin_catalog",
    "builtin",
    "load_recognizer",
]

LASSO_CAP = 10
SPECTRUM_CAP = 100_000

Map = tuple[int, ...]


def _compose(f: Map, g: Map) -> Map:
    """``f o g``: apply ``g`` first."""
    return tuple(f[s] for s in g)


def _identity(k: int) -> Map:
    return tuple(range(k))


def _const(k: int, s: int) -> Map:
    return (s,) * k


@dataclass(frozen=True)
class Recognizer:
    size: int
    start: int
    accepting: frozenset[int]
    maps: tuple[Map, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "maps", tuple(tuple(f) for f in self.maps))
        if self.size < 1:
            raise ValueError("a recognizer needs at least one state")
        if not 0 <= self.start < self.size:
            raise ValueError(f"start state {self.start} out of range")
        if any(not 0 <= s < self.size for s in self.accepting):
            raise ValueError("accepting state out of range")
        if len(self.maps) < 2:
            raise ValueError("need maps F_0 .. F_{r+1} with r >= 0")
        for i, f in enumerate(self.maps):
            if len(f) != self.size or any(not 0 <= s < self.size for s in f):
                raise ValueError(f"F_{i} is not a map on {self.size} states")

    @property
    def r(self) -> int:
        return len(self.maps) - 2

    def to_dict(self) -> dict:
        return {"K": self.size, "a": self.start, "W": sorted(self.accepting),
                "F": [list(f) for f in self.maps]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Recognizer":
        try:
            return cls(int(d["K"]), int(d["a"]), frozenset(int(s) for s in d["W"]),
                       tuple(tuple(int(s) for s in f) for f in d["F"]))
        except KeyError as exc:
            raise ValueError(f"recognizer is missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class Lasso:
    preperiod: int
    period: int

    def reduce(self, k: int) -> int:
        """Smallest exponent acting like ``k``."""
        if k < self.preperiod:
            return k
        return self.preperiod + (k - self.preperiod) % self.period


def validate_recognizer(R: Recognizer) -> list[str]:
    """Violated axioms, empty when ``R`` is valid."""
    out = []
    top = R.maps[-1]
    if _compose(top, top) != top:
        out.append(f"F_{R.r + 1} is not idempotent")
    for j in range(R.r + 1):
        for i in range(j):
            if _compose(R.maps[j], R.maps[i]) != R.maps[j]:
                out.append(f"F_{j} o F_{i} != F_{j}")
    return out


def transformation_lasso(f: Sequence[int], cap: int = LASSO_CAP) -> Lasso:
    """Minimal ``(a, b)`` with ``f^a = f^(a+b)``."""
    f = tuple(f)
    if len(f) > cap:
        raise ValueError(f"{len(f)} states exceed the lasso cap {cap}")
    seen: dict[Map, int] = {}
    power = _identity(len(f))
    k = 0
    while power not in seen:
        seen[power] = k
        power = _compose(f, power)
        k += 1
    first = seen[power]
    return Lasso(first, k - first)


def _run(R: Recognizer, sgn: int, ks: Sequence[int]) -> bool:
    """``ks`` is ``(k_r, ..., k_0)``."""
    state = R.maps[-1][R.start] if sgn else R.start
    for i, k in zip(range(R.r, -1, -1), ks):
        f = R.maps[i]
        for _ in range(k):
            state = f[state]
    return state in R.accepting


def eval_recognizer(R: Recognizer, x: Ordinal, cap: Optional[int] = None) -> bool:
    problems = validate_recognizer(R)
    if problems:
        raise ValueError("invalid recognizer: " + "; ".join(problems))
    tail, ks = cnf_split(x, R.r)
    cap = max(LASSO_CAP, R.size) if cap is None else cap
    reduced = [transformation_lasso(R.maps[i], cap).reduce(k)
               for i, k in zip(range(R.r, -1, -1), ks)]
    return _run(R, 0 if tail.is_zero else 1, reduced)


def _check_spectrum_ambient(beta: Segment) -> None:
    if isinstance(beta, SymbolicSegment):
        if beta.tag not in ("E0", "G0"):
            raise ValueError(f"spectra are defined over powers of w, E0 and G0, not {beta.tag}")
    elif not is_omega_power(beta) or beta.is_finite:
        raise ValueError(f"spectra need a power of w as ambient, got {format_segment(beta)}")


def spectrum(R: Recognizer, beta: Segment, cap: int = SPECTRUM_CAP) -> SemilinearSet:
    """The accepted ordinals below ``beta`` as a disjoint semilinear set."""
    problems = validate_recognizer(R)
    if problems:
        raise ValueError("invalid recognizer: " + "; ".join(problems))
    _check_spectrum_ambient(beta)
    lcap = max(LASSO_CAP, R.size)
    lassos = [transformation_lasso(R.maps[i], lcap) for i in range(R.r, -1, -1)]
    ranges = [range(l.preperiod + l.period) for l in lassos]
    total = 2
    for rg in ranges:
        total *= len(rg)
    if total > cap:
        raise ValueError(f"{total} spectrum pieces exceed the cap {cap}")
    parts = []
    for sgn in ((0, 1) if has_tail_room(beta, R.r) else (0,)):
        for ks in itertools.product(*ranges):
            if not _run(R, sgn, ks):
                continue
            b = tuple(0 if k < l.preperiod else l.period for k, l in zip(ks, lassos))
            parts.append(LinearSet(R.r, ks, b, "positive" if sgn else "none", beta))
    return SemilinearSet(tuple(parts), beta, disjoint=True)


def asymptotic_probability(R: Recognizer, beta: Segment, n: Optional[int] = None,
                           cap: int = TRUNCATION_CAP, **limit_options) -> DensityReport:
    """Limit probability of acceptance, with exact ``delta(0..n)`` if ``n`` is given."""
    S = spectrum(R, beta)
    report = semilinear_limit(S, **limit_options)
    if n is None:
        return report
    series = density_series(S, n, cap)
    return replace(report, values=series.values, cesaro=series.cesaro, skipped=series.skipped)


# ---------------------------------------------------------------- boolean algebra

def _lift(R: Recognizer, r: int) -> Recognizer:
    """Same recognizer with ``r`` coordinates.

    The new high coordinates all live in the old tail, so each of them (and
    the new tail map) sends the start to ``F_{r+1}(a)``; constants keep both
    axiom families.
    """
    extra = r - R.r
    if extra == 0:
        return R
    const = _const(R.size, R.maps[-1][R.start])
    return Recognizer(R.size, R.start, R.accepting, R.maps[:-1] + (const,) * (extra + 1))


def combine(R1: Recognizer, R2: Optional[Recognizer], op: str) -> Recognizer:
    if op == "not":
        return Recognizer(R1.size, R1.start, frozenset(range(R1.size)) - R1.accepting, R1.maps)
    if op not in ("and", "or"):
        raise ValueError(f"unknown operation {op!r}")
    if R2 is None:
        raise ValueError(f"{op!r} needs two recognizers")
    r = max(R1.r, R2.r)
    R1, R2 = _lift(R1, r), _lift(R2, r)
    k2 = R2.size

    def pair(s1: int, s2: int) -> int:
        return s1 * k2 + s2

    maps = tuple(
        tuple(pair(f1[s // k2], f2[s % k2]) for s in range(R1.size * k2))
        for f1, f2 in zip(R1.maps, R2.maps)
    )
    test = all if op == "and" else any
    accepting = frozenset(
        pair(s1, s2) for s1 in range(R1.size) for s2 in range(k2)
        if test((s1 in R1.accepting, s2 in R2.accepting))
    )
    out = Recognizer(R1.size * k2, pair(R1.start, R2.start), accepting, maps)
    problems = validate_recognizer(out)
    if problems:
        raise ArithmeticError("combined recognizer breaks the axioms: " + "; ".join(problems))
    return out


# ---------------------------------------------------------------- catalog

_HAS_MAX = "exists x. forall y. (y < x | y = x)"
_NONEMPTY = "exists x. x = x"
# x has no immediate predecessor: it is the first point or a limit point
_NO_PRED = "!(exists z. z < {v} & !(exists w. z < w & w < {v}))"

_CATALOG_SPECS = [
    ("true", "forall x. x = x",
     dict(size=1, start=0, accepting={0}, maps=[(0,), (0,)])),
    ("false", "exists x. !(x = x)",
     dict(size=1, start=0, accepting=set(), maps=[(0,), (0,)])),
    ("zero", f"!({_NONEMPTY})",
     dict(size=2, start=0, accepting={0}, maps=[(1, 1), (1, 1)])),
    ("successor", _HAS_MAX,
     dict(size=2, start=0, accepting={1}, maps=[(1, 1), (0, 0)])),
    ("at-least-omega",
     "existsS X. (exists x. x in X) & (forall x. x in X -> (exists y. x < y & y in X))",
     dict(size=2, start=0, accepting={1}, maps=[(0, 1), (1, 1)])),
    ("even-last-coefficient",
     "existsS X. (forall x. " + _NO_PRED.format(v="x") + " -> x in X)"
     " & (forall x. forall y. (x < y & !(exists z. x < z & z < y))"
     " -> ((x in X & !(y in X)) | (!(x in X) & y in X)))"
     " & (forall x. (forall y. (y < x | y = x)) -> !(x in X))",
     dict(size=2, start=0, accepting={0}, maps=[(1, 0), (0, 0)])),
    ("limit", f"({_NONEMPTY}) & !({_HAS_MAX})",
     dict(size=2, start=0, accepting={1}, maps=[(0, 0), (1, 1)])),
    ("divisible-by-omega2",
     f"!({_HAS_MAX}) & !(exists x. " + _NO_PRED.format(v="x")
     + " & (forall y. x < y -> !" + _NO_PRED.format(v="y") + "))",
     dict(size=2, start=0, accepting={0}, maps=[(1, 1), (1, 1), (0, 1)])),
]


def builtin_catalog() -> list[tuple[str, Formula, Recognizer]]:
    """Named properties as (sentence, recognizer) pairs."""
    out = []
    for name, text, spec in _CATALOG_SPECS:
        R = Recognizer(spec["size"], spec["start"], frozenset(spec["accepting"]),
                       tuple(spec["maps"]))
        out.append((name, parse_formula(text), R))
    return out


def builtin(name: str) -> Recognizer:
    for n, _, R in builtin_catalog():
        if n == name:
            return R
    names = ", ".join(n for n, _, _ in builtin_catalog())
    raise KeyError(f"no builtin recognizer {name!r}; known: {names}")


def load_recognizer(text: str) -> Recognizer:
    return Recognizer.from_dict(json.loads(text))
