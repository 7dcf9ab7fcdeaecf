"""Linear and semilinear sets of ordinals and their exact norm censuses.

A linear set of length ``r`` is::

    { w^(r+1)*a0 + w^r*(a_r + b_r*l_r) + ... + (a_0 + b_0*l_0) }

with natural ``l_i``.  A zero period ``b_i = 0`` pins coordinate ``i`` to
``a_i``.  The tail ``a0`` is either absent (``"none"``), unrestricted
(``"any"``) or nonzero (``"positive"``).  Members are always taken below the
ambient segment.  An optional window ``[prefix, prefix + w^bound)`` restricts
the set further; it is what the pieces of :func:`decompose_beta` use.

Offsets and periods are stored high coordinate first, ``(a_r, ..., a_0)``,
matching the way ordinals are written.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Union

from .counting import (
    TRUNCATION_CAP,
    count_series,
    series_geometric,
    series_mul,
    series_shift,
    tail_series,
)
from .ordinals import (
    ZERO,
    Ordinal,
    Segment,
    SymbolicSegment,
    cnf_split,
    compare,
    format_ordinal,
    format_segment,
    norm,
    omega_power,
    omega_power_times,
    ordinal,
    ordinal_add,
    parse_ordinal,
    parse_segment,
    segment_pieces,
)

__all__ = [
    "TAILS",
    "has_tail_room",
    "LinearSet",
    "SemilinearSet",
    "SignedDecomposition",
    "ext_gcd",
    "member",
    "reconstruct",
    "pad",
    "intersect_linear",
    "union",
    "intersect",
    "signed_pieces",
    "decompose_beta",
    "linear_count_series",
    "semilinear_count_series",
    "load_set",
]

TAILS = ("none", "any", "positive")
PIECE_CAP = 20


def has_tail_room(ambient: Segment, r: int) -> bool:
    """Whether some element below ``ambient`` is nonzero above position ``r``."""
    if isinstance(ambient, SymbolicSegment):
        return True
    return compare(ambient, omega_power(ordinal(r + 1))) > 0


@dataclass(frozen=True)
class LinearSet:
    r: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    tail: str
    ambient: Segment
    prefix: Ordinal = ZERO
    bound: Optional[Ordinal] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if self.r < 0:
            raise ValueError("length r must be non-negative")
        if len(self.a) != self.r + 1 or len(self.b) != self.r + 1:
            raise ValueError(f"need r+1 = {self.r + 1} offsets and periods")
        if any(v < 0 for v in self.a + self.b):
            raise ValueError("offsets and periods must be natural numbers")
        if self.tail not in TAILS:
            raise ValueError(f"tail must be one of {TAILS}, got {self.tail!r}")
        if self.bound is None:
            if not self.prefix.is_zero:
                raise ValueError("a prefix needs a window bound")
            if self.tail != "none" and not has_tail_room(self.ambient, self.r):
                raise ValueError(f"tail must be 'none': {format_segment(self.ambient)} "
                                 f"has no room above position {self.r}")
            return
        if not self.prefix.is_zero and compare(self.prefix.last_exponent, self.bound) < 0:
            raise ValueError("window prefix must end in exponents >= the bound")
        if isinstance(self.ambient, Ordinal):
            top = ordinal_add(self.prefix, omega_power(self.bound))
            if compare(top, self.ambient) > 0:
                raise ValueError("window exceeds the ambient segment")

    def coord(self, i: int) -> tuple[int, int]:
        """``(a_i, b_i)`` for coordinate ``i`` (0 is the finite part)."""
        return self.a[self.r - i], self.b[self.r - i]

    @property
    def window(self) -> Optional[tuple[Ordinal, Ordinal]]:
        return None if self.bound is None else (self.prefix, self.bound)

    def to_dict(self) -> dict:
        d = {"r": self.r, "a": list(self.a), "b": list(self.b), "tail": self.tail,
             "ambient": format_segment(self.ambient)}
        if self.bound is not None:
            d["prefix"] = format_ordinal(self.prefix)
            d["bound"] = format_ordinal(self.bound)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LinearSet":
        try:
            bound = d.get("bound")
            return cls(
                r=int(d["r"]),
                a=tuple(int(v) for v in d["a"]),
                b=tuple(int(v) for v in d["b"]),
                tail=d.get("tail", "none"),
                ambient=parse_segment(str(d["ambient"])),
                prefix=parse_ordinal(d["prefix"]) if "prefix" in d else ZERO,
                bound=parse_ordinal(bound) if bound is not None else None,
            )
        except KeyError as exc:
            raise ValueError(f"linear set is missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class SemilinearSet:
    """Finite union of linear sets over one ambient.

    ``disjoint`` marks unions known to be pairwise disjoint (spectra and
    segment decompositions), which lets inclusion-exclusion be skipped.
    """

    parts: tuple[LinearSet, ...]
    ambient: Segment
    disjoint: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        for p in self.parts:
            if p.ambient != self.ambient:
                raise ValueError("all parts must share the ambient segment")

    @classmethod
    def of(cls, parts: Sequence[LinearSet], ambient: Optional[Segment] = None,
           disjoint: bool = False) -> "SemilinearSet":
        if ambient is None:
            if not parts:
                raise ValueError("an empty semilinear set needs an explicit ambient")
            ambient = parts[0].ambient
        return cls(tuple(parts), ambient, disjoint)

    def to_dict(self) -> dict:
        return {"ambient": format_segment(self.ambient),
                "parts": [p.to_dict() for p in self.parts]}

    @classmethod
    def from_dict(cls, d: dict) -> "SemilinearSet":
        parts = [LinearSet.from_dict(p) for p in d["parts"]]
        ambient = parse_segment(d["ambient"]) if "ambient" in d else None
        return cls.of(parts, ambient)


@dataclass(frozen=True)
class SignedDecomposition:
    terms: tuple[tuple[int, LinearSet], ...]


def load_set(text: str) -> Union[LinearSet, SemilinearSet]:
    """Parse the JSON schema for a linear set or ``{"parts": [...]}``."""
    d = json.loads(text)
    if not isinstance(d, dict):
        raise ValueError("set description must be a JSON object")
    if "parts" in d:
        return SemilinearSet.from_dict(d)
    return LinearSet.from_dict(d)


# ---------------------------------------------------------------- membership

def _coord_ok(v: int, a: int, b: int) -> bool:
    if b == 0:
        return v == a
    return v >= a and (v - a) % b == 0


def _tail_ok(mode: str, tail: Ordinal) -> bool:
    if mode == "none":
        return tail.is_zero
    if mode == "positive":
        return not tail.is_zero
    return True


def _below(x: Ordinal, ambient: Segment) -> bool:
    # every Ordinal value is below the symbolic segments
    return isinstance(ambient, SymbolicSegment) or compare(x, ambient) < 0


def _in_window(x: Ordinal, prefix: Ordinal, bound: Ordinal) -> bool:
    return compare(prefix, x) <= 0 and compare(x, ordinal_add(prefix, omega_power(bound))) < 0


def member(L: Union[LinearSet, "SemilinearSet"], x: Ordinal) -> bool:
    if not _below(x, L.ambient):
        raise ValueError(f"{x} is not below the ambient {format_segment(L.ambient)}")
    if isinstance(L, SemilinearSet):
        return any(member(p, x) for p in L.parts)
    if L.bound is not None and not _in_window(x, L.prefix, L.bound):
        return False
    tail, ks = cnf_split(x, L.r)
    if not _tail_ok(L.tail, tail):
        return False
    return all(_coord_ok(k, a, b) for k, a, b in zip(ks, L.a, L.b))


def reconstruct(L: LinearSet, tail: Ordinal, ls: Sequence[int]) -> Ordinal:
    """The element with tail ``tail`` and multipliers ``ls = (l_r, ..., l_0)``."""
    if not _tail_ok(L.tail, tail):
        raise ValueError(f"tail {tail} violates tail mode {L.tail!r}")
    x = omega_power_times(L.r + 1, tail)
    for i in range(L.r, -1, -1):
        a, b = L.coord(i)
        k = a + b * ls[L.r - i]
        if k:
            x = ordinal_add(x, omega_power(ordinal(i), k))
    return ordinal_add(L.prefix, x)


# ---------------------------------------------------------------- intersection

def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, u, v)`` with ``u*a + v*b = g = gcd(a, b)``."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, rem = divmod(a, b)
        a, b = b, rem
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return a, u0, v0


def _merge_coord(a: int, b: int, a2: int, b2: int) -> Optional[tuple[int, int]]:
    if b == 0 and b2 == 0:
        return (a, 0) if a == a2 else None
    if b == 0:
        return (a, 0) if _coord_ok(a, a2, b2) else None
    if b2 == 0:
        return (a2, 0) if _coord_ok(a2, a, b) else None
    h, u, _ = ext_gcd(b, b2)
    if (a2 - a) % h:
        return None
    # b*l = a2 - a (mod b2), least l >= 0
    m2 = b2 // h
    l0 = ((a2 - a) // h * u) % m2
    v = a + b * l0
    period = b * m2
    if v < a2:
        v += -(-(a2 - v) // period) * period
    return v, period


_TAIL_MEET = {
    ("none", "none"): "none", ("none", "any"): "none", ("none", "positive"): None,
    ("any", "any"): "any", ("any", "positive"): "positive", ("positive", "positive"): "positive",
}


def _meet_tail(t1: str, t2: str) -> Optional[str]:
    return _TAIL_MEET.get((t1, t2), _TAIL_MEET.get((t2, t1)))


def _meet_window(w1, w2):
    """Intersection of two aligned windows, ``False`` when empty."""
    if w1 is None:
        return w2
    if w2 is None:
        return w1
    big, small = (w1, w2) if compare(w1[1], w2[1]) >= 0 else (w2, w1)
    return small if _in_window(small[0], *big) else False


def pad(L: LinearSet, r: int) -> list[LinearSet]:
    """Rewrite ``L`` with length ``r >= L.r``; the result is a disjoint list.

    Padding a set with tail ``any`` adds free coordinates (``a=0, b=1``); tail
    ``none`` adds coordinates pinned to 0.  A ``positive`` tail becomes a
    disjoint union: either the new tail is positive, or the highest nonzero
    new coordinate is at ``j``.
    """
    if r < L.r:
        raise ValueError("cannot shorten a linear set")
    extra = r - L.r
    if extra == 0:
        return [L]
    # without a window, a segment too short for a tail at r forces tail "none"
    room = L.bound is not None or has_tail_room(L.ambient, r)
    if L.tail == "none":
        return [replace(L, r=r, a=(0,) * extra + L.a, b=(0,) * extra + L.b)]
    if L.tail == "any":
        return [replace(L, r=r, a=(0,) * extra + L.a, b=(1,) * extra + L.b,
                        tail="any" if room else "none")]
    out = [replace(L, r=r, a=(0,) * extra + L.a, b=(1,) * extra + L.b)] if room else []
    for j in range(extra):
        # j new coordinates above are pinned to 0, this one is >= 1, the rest free
        a = (0,) * j + (1,) + (0,) * (extra - j - 1)
        b = (0,) * j + (1,) + (1,) * (extra - j - 1)
        out.append(replace(L, r=r, a=a + L.a, b=b + L.b, tail="none"))
    return out


def intersect_linear(L: LinearSet, L2: LinearSet) -> Optional[LinearSet]:
    """``L & L2`` as a linear set, or ``None`` when empty.

    Sets of different length are padded to the longer one first; padding a
    ``positive`` tail splits it, so that case must go through :func:`intersect`.
    """
    if L.ambient != L2.ambient:
        raise ValueError("ambient mismatch")
    r = max(L.r, L2.r)
    p1, p2 = pad(L, r), pad(L2, r)
    if len(p1) > 1 or len(p2) > 1:
        raise ValueError("padding a positive tail splits the set; use intersect()")
    L, L2 = p1[0], p2[0]
    win = _meet_window(L.window, L2.window)
    if win is False:
        return None
    tail = _meet_tail(L.tail, L2.tail)
    if tail is None:
        return None
    a, b = [], []
    for x1, y1, x2, y2 in zip(L.a, L.b, L2.a, L2.b):
        m = _merge_coord(x1, y1, x2, y2)
        if m is None:
            return None
        a.append(m[0])
        b.append(m[1])
    prefix, bound = win if win is not None else (ZERO, None)
    return LinearSet(r, tuple(a), tuple(b), tail, L.ambient, prefix, bound)


# ---------------------------------------------------------------- semilinear algebra

def _aligned(parts: Iterable[LinearSet]) -> list[LinearSet]:
    parts = list(parts)
    if not parts:
        return []
    r = max(p.r for p in parts)
    return [q for p in parts for q in pad(p, r)]


def union(S: SemilinearSet, S2: SemilinearSet) -> SemilinearSet:
    if S.ambient != S2.ambient:
        raise ValueError("ambient mismatch")
    return SemilinearSet(S.parts + S2.parts, S.ambient)


def intersect(S: SemilinearSet, S2: SemilinearSet) -> SemilinearSet:
    if S.ambient != S2.ambient:
        raise ValueError("ambient mismatch")
    r = max((p.r for p in S.parts + S2.parts), default=0)
    left = [q for p in S.parts for q in pad(p, r)]
    right = [q for p in S2.parts for q in pad(p, r)]
    parts = []
    for p in left:
        for q in right:
            m = intersect_linear(p, q)
            if m is not None:
                parts.append(m)
    return SemilinearSet(tuple(parts), S.ambient, S.disjoint and S2.disjoint)


def signed_pieces(S: SemilinearSet, cap: int = PIECE_CAP) -> SignedDecomposition:
    """Inclusion-exclusion: ``|U L_i| = sum_k (-1)^(k-1) sum_|I|=k |n_I L_i|``.

    Empty intersections are dropped together with all their supersets.
    """
    if S.disjoint:
        return SignedDecomposition(tuple((1, p) for p in S.parts))
    if len(S.parts) > cap:
        raise ValueError(f"{len(S.parts)} parts exceed the inclusion-exclusion cap {cap}")
    parts = _aligned(S.parts)
    terms: list[tuple[int, LinearSet]] = []

    def walk(start: int, current: Optional[LinearSet], size: int) -> None:
        for i in range(start, len(parts)):
            nxt = parts[i] if current is None else intersect_linear(current, parts[i])
            if nxt is None:
                continue
            terms.append((1 if size % 2 == 0 else -1, nxt))
            walk(i + 1, nxt, size + 1)

    walk(0, None, 0)
    return SignedDecomposition(tuple(terms))


def decompose_beta(beta: Ordinal) -> list[LinearSet]:
    """Disjoint windows ``w^g1*d1 + ... + w^gj*(dj - k) + delta`` covering ``beta``."""
    if not isinstance(beta, Ordinal) or beta.is_finite:
        raise ValueError("decompose_beta needs an ordinal beta >= w")
    pieces = sorted(segment_pieces(beta), key=lambda t: t[0])
    return [LinearSet(0, (0,), (1,), "any", beta, prefix, g) for prefix, g in pieces]


# ---------------------------------------------------------------- counting

def _coords_series(L: LinearSet, coords: Iterable[int], N: int) -> list[int]:
    f = [1] + [0] * N
    for i in coords:
        a, b = L.coord(i)
        step = i + 1
        f = series_shift(f, step * a, N)
        if b:
            f = series_geometric(f, step * b, N)
    return f


def _window_series(L: LinearSet, prefix: Ordinal, bound: Optional[Ordinal], N: int,
                   cap: int) -> list[int]:
    r = L.r
    zeros = [0] * (N + 1)
    ptail, pk = cnf_split(prefix, r)
    if bound is not None and bound.is_finite and int(bound) <= r + 1:
        g = int(bound)
        # positions >= g are pinned by the prefix, the tail is the prefix's
        if not _tail_ok(L.tail, ptail):
            return zeros
        for i in range(g, r + 1):
            if not _coord_ok(pk[r - i], *L.coord(i)):
                return zeros
        return series_shift(_coords_series(L, range(g), N), norm(prefix), N)
    coords = _coords_series(L, range(r + 1), N)
    if L.tail == "none":
        if not ptail.is_zero:
            return zeros
        tail = [1] + [0] * N
    else:
        seg = L.ambient if bound is None else omega_power(bound)
        tail = list(tail_series(seg, r, N, cap).values)
        if L.tail == "positive" and ptail.is_zero:
            tail[0] -= 1
    return series_shift(series_mul(coords, tail, N), norm(prefix), N)


def linear_count_series(L: LinearSet, N: int, cap: int = TRUNCATION_CAP) -> list[int]:
    """``#{x in L : N(x) = n}`` for ``n = 0..N``."""
    if N > cap:
        raise ValueError(f"truncation {N} exceeds the cap {cap}")
    if L.window is not None:
        windows = [L.window]
    elif isinstance(L.ambient, SymbolicSegment):
        if L.ambient.tag not in ("E0", "G0"):
            raise ValueError(f"linear sets are not supported over {L.ambient.tag}")
        windows = [(ZERO, None)]
    else:
        windows = segment_pieces(L.ambient)
    total = [0] * (N + 1)
    for prefix, bound in windows:
        for n, v in enumerate(_window_series(L, prefix, bound, N, cap)):
            total[n] += v
    return total


def semilinear_count_series(S: SemilinearSet, N: int, cap: int = TRUNCATION_CAP,
                            piece_cap: int = PIECE_CAP) -> list[int]:
    total = [0] * (N + 1)
    for sign, part in signed_pieces(S, piece_cap).terms:
        for n, v in enumerate(linear_count_series(part, N, cap)):
            total[n] += sign * v
    return total


def ambient_series(ambient: Segment, N: int, cap: int = TRUNCATION_CAP) -> list[int]:
    return list(count_series(ambient, N, cap).values)
