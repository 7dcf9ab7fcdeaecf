"""Exact counting series ``c_beta(n) = #{a < beta : N(a) = n}``.

Every supported segment is an additive number system whose primes are the
principal summands, so each series is an Euler product
``prod_m (1 - x^m)^(-p(m))`` where ``p(m)`` counts primes of norm ``m``.
All coefficients are Python integers.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .ordinals import (
    Ordinal,
    Segment,
    SymbolicSegment,
    compare,
    format_segment,
    is_omega_power,
    matula_decode,
    norm,
    ordinal,
    prime_index,
    segment_pieces,
    _PRIMES,
)

__all__ = [
    "CountSeries",
    "RadiusEstimate",
    "TRUNCATION_CAP",
    "euler_transform",
    "count_series",
    "tail_series",
    "radius_estimate",
    "matula_census",
    "series_mul",
    "series_geometric",
    "series_shift",
]

TRUNCATION_CAP = 512
RATIO_WINDOW = 8
MATULA_CAP = 10**6


@dataclass(frozen=True)
class CountSeries:
    segment: Segment
    values: tuple[int, ...]

    @property
    def truncation(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value"])
        for n, v in enumerate(self.values):
            w.writerow([n, v])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"segment": format_segment(self.segment),
                           "values": [str(v) for v in self.values]})

    @classmethod
    def from_json(cls, text: str) -> "CountSeries":
        from .ordinals import parse_segment
        d = json.loads(text)
        return cls(parse_segment(d["segment"]), tuple(int(v) for v in d["values"]))


@dataclass(frozen=True)
class RadiusEstimate:
    rho: float
    window: tuple[float, ...]
    spread: float


# ---------------------------------------------------------------- series helpers

def series_mul(f: list[int], g: list[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, fi in enumerate(f[: N + 1]):
        if fi:
            for j, gj in enumerate(g[: N + 1 - i]):
                if gj:
                    out[i + j] += fi * gj
    return out


def series_geometric(f: list[int], step: int, N: int) -> list[int]:
    """``f / (1 - x^step)`` truncated at ``N``."""
    out = list(f[: N + 1]) + [0] * (N + 1 - len(f[: N + 1]))
    for n in range(step, N + 1):
        out[n] += out[n - step]
    return out


def series_shift(f: list[int], s: int, N: int) -> list[int]:
    """``x^s * f`` truncated at ``N``."""
    out = [0] * (N + 1)
    for n in range(s, N + 1):
        if n - s < len(f):
            out[n] = f[n - s]
    return out


def euler_transform(N: int, prime_count: Callable[[int, list[int]], int]) -> list[int]:
    """Coefficients of ``prod_{m>=1} (1 - x^m)^(-p(m))`` up to ``x^N``.

    ``prime_count(m, a)`` may look at the coefficients ``a[0..m-1]`` already
    produced, which handles self-similar systems such as rooted trees.
    Uses ``n a(n) = sum_k b(k) a(n-k)`` with ``b(k) = sum_{d|k} d p(d)``.
    """
    a = [1]
    b = [0] * (N + 1)
    for n in range(1, N + 1):
        p = prime_count(n, a)
        if p < 0:
            raise ValueError(f"negative prime count at {n}")
        if p:
            for k in range(n, N + 1, n):
                b[k] += n * p
        s = 0
        for k in range(1, n + 1):
            if b[k]:
                s += b[k] * a[n - k]
        a.append(s // n)
    return a


def _check_cap(N: int, cap: int) -> None:
    if N < 0:
        raise ValueError("truncation must be non-negative")
    if N > cap:
        raise ValueError(f"truncation {N} exceeds the cap {cap}")


# ---------------------------------------------------------------- count series

@functools.lru_cache(maxsize=256)
def _ordinal_counts(beta: Ordinal, N: int) -> tuple[int, ...]:
    if beta.is_zero:
        return (0,) * (N + 1)
    if is_omega_power(beta):
        gamma = beta.terms[0][0]
        if gamma.is_zero:
            return (1,) + (0,) * N
        inner = _ordinal_counts(gamma, max(N - 1, 0))
        return tuple(euler_transform(N, lambda m, a: inner[m - 1]))
    total = [0] * (N + 1)
    for prefix, g in segment_pieces(beta):
        piece = _ordinal_counts(Ordinal(((g, 1),)), N)
        s = norm(prefix)
        for n in range(s, N + 1):
            total[n] += piece[n - s]
    return tuple(total)


@functools.lru_cache(maxsize=64)
def _symbolic_counts(tag: str, N: int) -> tuple[int, ...]:
    if tag == "E0":
        # rooted trees by edge count: the primes w^x have norm N(x) + 1
        return tuple(euler_transform(N, lambda m, a: a[m - 1]))
    if tag == "G0":
        # free binary principal terms phi(x, y), norm 1 + N(x) + N(y)
        def pairs(m: int, g: list[int]) -> int:
            return sum(g[i] * g[m - 1 - i] for i in range(m))
        return tuple(euler_transform(N, pairs))
    ot = euler_transform(N, lambda m, a: a[m - 2] if m >= 2 else 0)
    if tag == "BH-OT":
        return tuple(ot)
    if tag == "BH-CT":
        return tuple(euler_transform(N, lambda m, a: ot[m - 1]))
    raise ValueError(f"unsupported segment {tag!r}")


def count_series(beta: Segment, N: int, cap: int = TRUNCATION_CAP) -> CountSeries:
    """``c_beta(0..N)`` exactly."""
    _check_cap(N, cap)
    if isinstance(beta, SymbolicSegment):
        return CountSeries(beta, _symbolic_counts(beta.tag, N))
    return CountSeries(beta, _ordinal_counts(beta, N))


def tail_series(beta: Segment, r: int, N: int, cap: int = TRUNCATION_CAP) -> CountSeries:
    """Multisets of primes ``w^x`` with ``x > r`` of total norm ``n``.

    This is the generating function of ``w^(r+1) * a0`` over the admissible
    tails ``a0``: the Euler product of the segment with one prime removed for
    each finite exponent ``x <= r``.
    """
    _check_cap(N, cap)
    if isinstance(beta, SymbolicSegment):
        if beta.tag == "E0":
            full = _symbolic_counts("E0", N)

            def pc(m: int, a: list[int]) -> int:
                return full[m - 1] - (m <= r + 1)
        elif beta.tag == "G0":
            full = _symbolic_counts("G0", N)

            def pc(m: int, a: list[int]) -> int:
                return sum(full[i] * full[m - 1 - i] for i in range(m)) - (m <= r + 1)
        else:
            raise ValueError(f"tail series are not defined for {beta.tag}")
        return CountSeries(beta, tuple(euler_transform(N, pc)))
    if not is_omega_power(beta):
        raise ValueError(f"tail series need a power of w, got {format_segment(beta)}")
    gamma = beta.terms[0][0]
    inner = _ordinal_counts(gamma, N)

    def pc(m: int, a: list[int]) -> int:
        # drop the finite exponent m - 1 when it is <= r and below gamma
        drop = m - 1 <= r and compare(ordinal(m - 1), gamma) < 0
        return inner[m - 1] - drop
    return CountSeries(beta, tuple(euler_transform(N, pc)))


def radius_estimate(cs: CountSeries, window: int = RATIO_WINDOW) -> RadiusEstimate:
    """Mean of ``c(n)/c(n+1)`` over the last ``window`` ratios.

    A series supported on a sublattice ``d*N`` (gcd of the indices of its
    nonzero coefficients) uses ``(c(n)/c(n+d))^(1/d)`` on that lattice instead.
    """
    N = cs.truncation
    if N < 32:
        raise ValueError("radius estimation needs truncation >= 32")
    d = 0
    for n, v in enumerate(cs.values):
        if n and v:
            d = math.gcd(d, n)
    if d == 0:
        raise ValueError("series has no nonzero coefficient beyond 0")
    top = N - N % d
    if not 1 <= window <= top // d - 1:
        raise ValueError("bad ratio window")
    ratios = []
    for n in range(top - window * d, top, d):
        num, den = cs.values[n], cs.values[n + d]
        if num == 0 or den == 0:
            raise ValueError(f"zero coefficient at {n if num == 0 else n + d}")
        ratios.append((num / den) ** (1 / d))
    rho = sum(ratios) / len(ratios)
    return RadiusEstimate(rho, tuple(ratios), max(ratios) - min(ratios))


# ---------------------------------------------------------------- Matula census

def matula_census(
    beta: Segment,
    n_max: int,
    pred: Optional[Callable[[Ordinal], bool]] = None,
    cap: int = MATULA_CAP,
) -> list[tuple[int, int]]:
    """Cumulative ``(C_beta(n), hits(n))`` for ``n = 1..n_max``.

    ``C_beta(n)`` counts codes ``m <= n`` whose decoded ordinal lies below
    ``beta``; ``hits`` additionally requires ``pred``.  Entry ``n - 1`` of the
    returned list belongs to ``n``.
    """
    if n_max > cap:
        raise ValueError(f"census size {n_max} exceeds the cap {cap}")
    if isinstance(beta, SymbolicSegment) and beta.tag != "E0":
        raise ValueError("the Matula census is defined below E0 only")
    below = (lambda x: True) if isinstance(beta, SymbolicSegment) else (lambda x: compare(x, beta) < 0)
    out = []
    total = hits = 0
    for m in iter_decoded(n_max):
        if below(m):
            total += 1
            if pred is not None and pred(m):
                hits += 1
        out.append((total, hits))
    return out


def iter_decoded(n_max: int) -> Iterable[Ordinal]:
    """``matula_decode(1..n_max)`` via a smallest-prime-factor sieve."""
    spf = list(range(n_max + 1))
    i = 2
    while i * i <= n_max:
        if spf[i] == i:
            for j in range(i * i, n_max + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    _PRIMES.extend(n_max)
    for m in range(1, n_max + 1):
        if m == 1:
            yield matula_decode(1)
            continue
        acc: dict[Ordinal, int] = {}
        k = m
        while k > 1:
            p = spf[k]
            e = matula_decode(prime_index(p))
            acc[e] = acc.get(e, 0) + 1
            k //= p
        yield Ordinal(tuple(sorted(acc.items(), key=lambda t: t[0], reverse=True)))

