"""Density sequences and closed-form limit densities of (semi)linear sets.

``D_L(n) = #{x in L : N(x) = n} / c_beta(n)``.  Three regimes:

* ``A``: ``w <= beta < w^w``.  Finite rank; Hua's asymptotics give a Cesaro
  limit ``1/prod b_i`` (plain limit ``d/prod b_i`` on the gcd grid).
* ``B``: ``w^w <= beta < e0``.  Schur's theorem at radius 1 gives a plain
  limit ``1/prod b_i``.
* ``C``: symbolic segments with radius ``rho < 1``.  Schur at ``rho`` gives
  ``rho^s / S(rho)``; the value is kept as a rational function of ``rho`` and
  evaluated at the estimated radius.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import sympy

from .counting import (
    RATIO_WINDOW,
    TRUNCATION_CAP,
    RadiusEstimate,
    count_series,
    radius_estimate,
    series_geometric,
    series_mul,
)
from .ordinals import (
    OMEGA,
    ZERO,
    Ordinal,
    Segment,
    SymbolicSegment,
    cnf_split,
    compare,
    format_segment,
    is_omega_power,
    omega_power,
    ordinal,
)
from .semilinear import (
    PIECE_CAP,
    LinearSet,
    SemilinearSet,
    _coord_ok,
    _meet_window,
    _tail_ok,
    linear_count_series,
    semilinear_count_series,
    signed_pieces,
)

__all__ = [
    "RHO",
    "DensityReport",
    "regime_of",
    "density_series",
    "closed_form_limit",
    "semilinear_limit",
    "schur_polynomial",
    "schur_series",
    "telescoping_mismatches",
    "format_rational",
]

RHO = sympy.Symbol("rho", positive=True)
RHO_TRUNCATION = 120
OMEGA_OMEGA = omega_power(OMEGA)

Limit = Union[Fraction, sympy.Expr]


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _sig10(v: float) -> float:
    return float(f"{v:.10g}")


@dataclass(frozen=True)
class DensityReport:
    regime: Optional[str]
    values: tuple[Optional[Fraction], ...] = ()
    cesaro: tuple[Fraction, ...] = ()
    limit: Optional[Limit] = None
    limit_kind: Optional[str] = None
    d: int = 1
    grid_limit: Optional[Fraction] = None
    grid_offset: int = 0
    rho_used: Optional[RadiusEstimate] = None
    skipped: tuple[int, ...] = ()
    pieces: int = field(default=0, compare=False)
    schur: Optional[sympy.Expr] = None

    @property
    def rational(self) -> bool:
        return isinstance(self.limit, Fraction)

    @property
    def limit_value(self) -> Optional[float]:
        if self.limit is None:
            return None
        if isinstance(self.limit, Fraction):
            return float(self.limit)
        if self.rho_used is None:
            return float(self.limit)
        return float(self.limit.subs(RHO, self.rho_used.rho))

    def limit_text(self) -> Optional[str]:
        if self.limit is None:
            return None
        if isinstance(self.limit, Fraction):
            return format_rational(self.limit)
        return str(self.limit)

    def to_dict(self) -> dict:
        d = {
            "regime": self.regime,
            "limit": self.limit_text(),
            "limit_kind": self.limit_kind,
            "limit_value": None if self.limit is None else _sig10(self.limit_value),
            "rational": self.rational,
            "d": self.d,
        }
        if self.grid_limit is not None:
            d["grid_limit"] = format_rational(self.grid_limit)
            d["grid_offset"] = self.grid_offset
        if self.rho_used is not None:
            d["rho"] = _sig10(self.rho_used.rho)
            d["rho_spread"] = _sig10(self.rho_used.spread)
        if self.schur is not None:
            d["schur"] = str(self.schur)
        if self.values:
            d["values"] = [None if v is None else format_rational(v) for v in self.values]
            d["cesaro"] = [format_rational(v) for v in self.cesaro]
        if self.skipped:
            d["skipped"] = list(self.skipped)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k, v in self.to_dict().items():
            if k not in ("values", "cesaro"):
                buf.write(f"# {k},{'' if v is None else v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "D", "cesaro"])
        for n, (v, c) in enumerate(zip(self.values, self.cesaro)):
            w.writerow([n, "" if v is None else format_rational(v), format_rational(c)])
        return buf.getvalue()


def regime_of(ambient: Segment) -> str:
    if isinstance(ambient, SymbolicSegment):
        return "C"
    if ambient.is_finite:
        raise ValueError("limit densities need an infinite segment")
    return "A" if compare(ambient, OMEGA_OMEGA) < 0 else "B"


# ---------------------------------------------------------------- density sequences

def density_series(L: Union[LinearSet, SemilinearSet], N: int, cap: int = TRUNCATION_CAP,
                   piece_cap: int = PIECE_CAP) -> DensityReport:
    """Exact ``D_L(0..N)`` and their running Cesaro means.

    Norms with ``c_beta(n) = 0`` (finite segments only) are skipped: their
    value is ``None`` and the means run over the remaining indices.
    """
    if isinstance(L, SemilinearSet):
        num = semilinear_count_series(L, N, cap, piece_cap)
    else:
        num = linear_count_series(L, N, cap)
    den = count_series(L.ambient, N, cap).values
    values: list[Optional[Fraction]] = []
    cesaro: list[Fraction] = []
    skipped = []
    acc = Fraction(0)
    seen = 0
    for n in range(N + 1):
        if den[n] == 0:
            skipped.append(n)
            values.append(None)
        else:
            v = Fraction(num[n], den[n])
            values.append(v)
            acc += v
            seen += 1
        cesaro.append(acc / seen if seen else Fraction(0))
    finite = isinstance(L.ambient, Ordinal) and L.ambient.is_finite
    regime = None if finite else regime_of(L.ambient)
    return DensityReport(regime, tuple(values), tuple(cesaro), skipped=tuple(skipped))


# ---------------------------------------------------------------- closed forms

def _product_inverse(periods) -> Fraction:
    p = 1
    for b in periods:
        if b == 0:
            return Fraction(0)
        p *= b
    return Fraction(1, p)


def _regime_a(L: LinearSet) -> DensityReport:
    beta = L.ambient
    R = int(beta.leading_exponent)
    d1 = beta.terms[0][1]
    r = L.r
    total = Fraction(0)
    grid = None
    for k in range(1, d1 + 1):
        prefix = omega_power(ordinal(R), d1 - k)
        win = (prefix, ordinal(R))
        if L.window is not None and _meet_window(L.window, win) != win:
            continue
        ptail, pk = cnf_split(prefix, r)
        if R <= r + 1:
            if not _tail_ok(L.tail, ptail):
                continue
            if not all(_coord_ok(pk[r - i], *L.coord(i)) for i in range(R, r + 1)):
                continue
            periods = [L.coord(i)[1] for i in range(R)]
            offset = sum((i + 1) * L.coord(i)[0] for i in range(R))
        else:
            # positions r+1..R-1 live in the tail; "none" pins them to 0
            if L.tail == "none":
                continue
            periods = [L.coord(i)[1] for i in range(r + 1)] + [1] * (R - r - 1)
            offset = sum((i + 1) * L.coord(i)[0] for i in range(r + 1))
        piece = _product_inverse(periods)
        total += piece
        if piece and d1 == 1:
            d = 0
            for i, b in enumerate(periods):
                d = math.gcd(d, (i + 1) * b)
            grid = (d, offset % d)
    limit = total / d1
    if limit == 0:
        return DensityReport("A", limit=limit, limit_kind="plain")
    if grid is None:
        return DensityReport("A", limit=limit, limit_kind="cesaro")
    d, off = grid
    return DensityReport("A", limit=limit, limit_kind="cesaro", d=d,
                         grid_limit=d * limit, grid_offset=off)


def _regime_b(L: LinearSet) -> DensityReport:
    beta = L.ambient
    if not is_omega_power(beta):
        raise ValueError(f"closed forms above w^w need a power of w, got {format_segment(beta)}")
    whole = (ZERO, beta.terms[0][0])
    if L.window is not None and L.window != whole:
        return DensityReport("B", limit=Fraction(0), limit_kind="plain")
    if L.tail == "none":
        return DensityReport("B", limit=Fraction(0), limit_kind="plain")
    return DensityReport("B", limit=_product_inverse(L.b), limit_kind="plain")


def schur_polynomial(L: LinearSet) -> sympy.Expr:
    """``S(x) = prod_{b_i>0} (1 + x^(i+1) + ... + x^((i+1)(b_i-1))) * prod_{b_i=0} 1/(1-x^(i+1))``."""
    S = sympy.Integer(1)
    for i in range(L.r + 1):
        _, b = L.coord(i)
        m = i + 1
        if b:
            S *= sum(RHO ** (m * j) for j in range(b))
        else:
            S /= 1 - RHO ** m
    return S


def schur_series(L: LinearSet, N: int) -> list[int]:
    """Coefficients of ``S(x)`` up to ``x^N``."""
    f = [1] + [0] * N
    for i in range(L.r + 1):
        _, b = L.coord(i)
        m = i + 1
        if b:
            poly = [0] * (N + 1)
            for j in range(b):
                if m * j <= N:
                    poly[m * j] = 1
            f = series_mul(f, poly, N)
        else:
            f = series_geometric(f, m, N)
    return f


def telescoping_mismatches(L: LinearSet, N: int, cap: int = TRUNCATION_CAP) -> list[int]:
    """Indices ``n <= N`` where ``[x^n] S(x) T_L(x) != c_beta(n - s)``.

    ``T_L`` is the census of ``L`` and ``s = sum (i+1) a_i`` its offset; the
    identity holds for tail ``any`` over segments with room above position ``r``.
    """
    if L.tail != "any" or L.window is not None:
        raise ValueError("the telescoping identity needs tail 'any' and no window")
    s = sum((i + 1) * L.coord(i)[0] for i in range(L.r + 1))
    lhs = series_mul(schur_series(L, N), linear_count_series(L, N, cap), N)
    c = count_series(L.ambient, N, cap).values
    return [n for n in range(N + 1) if lhs[n] != (c[n - s] if n >= s else 0)]


def _estimate_rho(ambient: SymbolicSegment, rho_n: int, window: int) -> RadiusEstimate:
    return radius_estimate(count_series(ambient, rho_n), window)


def _regime_c(L: LinearSet, rho: Optional[RadiusEstimate], rho_n: int, window: int) -> DensityReport:
    if L.ambient.tag not in ("E0", "G0"):
        raise ValueError(f"closed forms are not available over {L.ambient.tag}")
    if rho is None:
        rho = _estimate_rho(L.ambient, rho_n, window)
    zero = DensityReport("C", limit=sympy.Integer(0), limit_kind="plain", rho_used=rho)
    if L.window is not None or L.tail == "none":
        return zero
    s = sum((i + 1) * L.coord(i)[0] for i in range(L.r + 1))
    S = schur_polynomial(L)
    expr = sympy.factor(sympy.cancel(RHO ** s / S))
    return DensityReport("C", limit=expr, limit_kind="plain", rho_used=rho, schur=S)


def closed_form_limit(L: LinearSet, rho: Optional[RadiusEstimate] = None,
                      rho_n: int = RHO_TRUNCATION, window: int = RATIO_WINDOW) -> DensityReport:
    """Limit fields of the density report for a single linear set."""
    regime = regime_of(L.ambient)
    if regime == "A":
        return _regime_a(L)
    if regime == "B":
        return _regime_b(L)
    return _regime_c(L, rho, rho_n, window)


def semilinear_limit(S: SemilinearSet, rho: Optional[RadiusEstimate] = None,
                     rho_n: int = RHO_TRUNCATION, window: int = RATIO_WINDOW,
                     piece_cap: int = PIECE_CAP) -> DensityReport:
    """Combine per-piece limits by inclusion-exclusion."""
    regime = regime_of(S.ambient)
    terms = signed_pieces(S, piece_cap).terms
    if regime == "C":
        if S.ambient.tag not in ("E0", "G0"):
            raise ValueError(f"closed forms are not available over {S.ambient.tag}")
        if rho is None:
            rho = _estimate_rho(S.ambient, rho_n, window)
        total = sympy.Integer(0)
        for sign, part in terms:
            total += sign * _regime_c(part, rho, rho_n, window).limit
        expr = sympy.factor(sympy.cancel(total))
        report = DensityReport("C", limit=expr, limit_kind="plain", rho_used=rho, pieces=len(terms))
        v = report.limit_value
        if not -1e-12 <= v <= 1 + 1e-12:
            raise ArithmeticError(f"limit {expr} evaluates to {v} outside [0, 1]")
        return report
    total = Fraction(0)
    d = 1
    for sign, part in terms:
        rep = closed_form_limit(part)
        total += sign * rep.limit
        d = d * rep.d // math.gcd(d, rep.d)
    if not 0 <= total <= 1:
        raise ArithmeticError(f"limit {total} outside [0, 1]")
    kind = "cesaro" if regime == "A" else "plain"
    return DensityReport(regime, limit=total, limit_kind=kind, d=d, pieces=len(terms))
