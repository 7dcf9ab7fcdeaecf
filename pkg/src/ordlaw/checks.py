"""Cross-validation of the exact machinery against brute-force oracles.

Every check compares a fast computation with plain enumeration of ordinals
by norm (or with direct iteration / model checking).  ``run_checks`` drives
the ``check`` command.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .config import Config
from .counting import count_series
from .mso import eval_finite
from .ordinals import (
    OMEGA,
    Ordinal,
    Segment,
    enumerate_by_norm,
    format_segment,
    matula_decode,
    matula_encode,
    nth_prime,
    omega_power,
    ordinal,
    ordinals_of_norm,
    parse_segment,
)
from .recognizer import (
    Recognizer,
    asymptotic_probability,
    builtin_catalog,
    combine,
    eval_recognizer,
    spectrum,
    validate_recognizer,
)
from .semilinear import (
    TAILS,
    LinearSet,
    SemilinearSet,
    decompose_beta,
    has_tail_room,
    intersect,
    linear_count_series,
    member,
    semilinear_count_series,
)
from .tauberian import density_series, telescoping_mismatches

__all__ = ["CheckResult", "random_linear_set", "random_recognizer", "matula_reference", "run_checks"]

SEED = 20240611
COUNT_SEGMENTS = ("w", "w^2", "w^3", "w^w", "w^2*2+w", "E0")
SET_AMBIENTS = ("w", "w^2", "w^3", "w^w")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


# ---------------------------------------------------------------- generators

def random_linear_set(rng: random.Random, ambient: Segment, max_r: int = 2,
                      max_offset: int = 3, max_period: int = 3) -> LinearSet:
    r = rng.randint(0, max_r)
    a = tuple(rng.randint(0, max_offset) for _ in range(r + 1))
    b = tuple(rng.randint(0, max_period) for _ in range(r + 1))
    tail = rng.choice(TAILS) if has_tail_room(ambient, r) else "none"
    return LinearSet(r, a, b, tail, ambient)


def random_recognizer(rng: random.Random, max_states: int = 4, r: int | None = None) -> Recognizer:
    """A valid recognizer: idempotent top map, lower maps resampled until
    ``F_j o F_i = F_j`` holds."""
    k = rng.randint(1, max_states)
    r = rng.randint(0, 2) if r is None else r
    while True:
        # idempotent map: pick an image set, send it to itself and the rest into it
        image = rng.sample(range(k), rng.randint(1, k))
        top = tuple(s if s in image else rng.choice(image) for s in range(k))
        maps = [tuple(rng.randrange(k) for _ in range(k)) for _ in range(r + 1)]
        R = Recognizer(k, rng.randrange(k), frozenset(s for s in range(k) if rng.random() < 0.5),
                       tuple(maps) + (top,))
        if not validate_recognizer(R):
            return R


def matula_reference(x: Ordinal) -> int:
    """Straight from the definition: ``M(sum w^e_j) = prod p_{M(e_j)}``."""
    out = 1
    for e, c in x.terms:
        out *= nth_prime(matula_reference(e)) ** c
    return out


# ---------------------------------------------------------------- checks

def _count_oracle(cfg: Config) -> str:
    n_max = min(cfg.oracle_bound, cfg.ordinal_bound)
    for text in COUNT_SEGMENTS:
        beta = parse_segment(text)
        series = count_series(beta, n_max).values
        for n in range(n_max + 1):
            brute = len(enumerate_by_norm(beta, n, cfg.ordinal_bound))
            if series[n] != brute:
                raise AssertionError(f"{text}: c({n}) = {series[n]}, enumeration gives {brute}")
    return f"{len(COUNT_SEGMENTS)} segments, n <= {n_max}"


def _matula(cfg: Config) -> str:
    top = min(10**4, cfg.matula_cap)
    for m in range(1, top + 1):
        if matula_encode(matula_decode(m)) != m:
            raise AssertionError(f"round trip fails at {m}")
    count = 0
    for n in range(9):
        for x in ordinals_of_norm(n):
            count += 1
            if matula_encode(x) != matula_reference(x):
                raise AssertionError(f"encode disagrees with the definition at {x}")
    return f"round trip 1..{top}, {count} ordinals of norm <= 8"


def _by_norm(ambient: Segment, n_max: int) -> Iterable[list[Ordinal]]:
    return [enumerate_by_norm(ambient, n) for n in range(n_max + 1)]


def _linear_counts(cfg: Config, trials: int = 40, n_max: int = 10) -> str:
    rng = random.Random(SEED)
    for _ in range(trials):
        ambient = parse_segment(rng.choice(SET_AMBIENTS))
        L = random_linear_set(rng, ambient)
        series = linear_count_series(L, n_max)
        for n, xs in enumerate(_by_norm(ambient, n_max)):
            brute = sum(member(L, x) for x in xs)
            if series[n] != brute:
                raise AssertionError(f"{L}: count({n}) = {series[n]}, enumeration gives {brute}")
    return f"{trials} random sets, n <= {n_max}"


def _intersection(cfg: Config, trials: int = 60, n_max: int = 9) -> str:
    rng = random.Random(SEED + 1)
    for _ in range(trials):
        ambient = parse_segment(rng.choice(SET_AMBIENTS))
        L1, L2 = random_linear_set(rng, ambient), random_linear_set(rng, ambient)
        both = intersect(SemilinearSet.of([L1]), SemilinearSet.of([L2]))
        for xs in _by_norm(ambient, n_max):
            for x in xs:
                if member(both, x) != (member(L1, x) and member(L2, x)):
                    raise AssertionError(f"{L1} & {L2} wrong at {x}")
    return f"{trials} random pairs, norm <= {n_max}"


def _inclusion_exclusion(cfg: Config, trials: int = 30, n_max: int = 10) -> str:
    rng = random.Random(SEED + 2)
    for _ in range(trials):
        ambient = parse_segment(rng.choice(SET_AMBIENTS))
        S = SemilinearSet.of([random_linear_set(rng, ambient) for _ in range(3)])
        series = semilinear_count_series(S, n_max, piece_cap=cfg.piece_cap)
        for n, xs in enumerate(_by_norm(ambient, n_max)):
            brute = sum(member(S, x) for x in xs)
            if series[n] != brute:
                raise AssertionError(f"union count({n}) = {series[n]}, enumeration gives {brute}")
    return f"{trials} random 3-part unions, n <= {n_max}"


def _decomposition(cfg: Config, n_max: int = 8) -> str:
    betas = [x for n in range(1, 7) for x in ordinals_of_norm(n) if not x.is_finite]
    for beta in betas:
        pieces = decompose_beta(beta)
        for xs in _by_norm(beta, n_max):
            for x in xs:
                hits = sum(member(p, x) for p in pieces)
                if hits != 1:
                    raise AssertionError(f"{x} lies in {hits} pieces of {format_segment(beta)}")
    return f"{len(betas)} segments of norm <= 6, elements of norm <= {n_max}"


def _densities(cfg: Config, trials: int = 20, n_max: int = 10) -> str:
    rng = random.Random(SEED + 3)
    for _ in range(trials):
        ambient = parse_segment(rng.choice(SET_AMBIENTS))
        L = random_linear_set(rng, ambient)
        report = density_series(L, n_max)
        for n, xs in enumerate(_by_norm(ambient, n_max)):
            brute = Fraction(sum(member(L, x) for x in xs), len(xs))
            if report.values[n] != brute:
                raise AssertionError(f"{L}: D({n}) = {report.values[n]}, enumeration gives {brute}")
    return f"{trials} random sets, n <= {n_max}"


def _catalog(cfg: Config) -> str:
    for name, phi, R in builtin_catalog():
        problems = validate_recognizer(R)
        if problems:
            raise AssertionError(f"{name}: {'; '.join(problems)}")
        for n in range(cfg.oracle_bound + 1):
            if eval_finite(phi, n, cfg.oracle_bound) != eval_recognizer(R, ordinal(n)):
                raise AssertionError(f"{name} disagrees with its sentence at {n}")
    return f"finite agreement for n <= {cfg.oracle_bound}"


def _spectra(cfg: Config, n_max: int = 9, trials: int = 10) -> str:
    rng = random.Random(SEED + 4)
    recognizers = [R for _, _, R in builtin_catalog()]
    recognizers += [random_recognizer(rng) for _ in range(trials)]
    ambients = [OMEGA, omega_power(ordinal(2)), omega_power(OMEGA), parse_segment("E0")]
    for R in recognizers:
        for beta in ambients:
            S = spectrum(R, beta)
            for xs in _by_norm(beta, n_max):
                for x in xs:
                    if member(S, x) != eval_recognizer(R, x):
                        raise AssertionError(f"spectrum of {R.to_json()} wrong at {x}")
    return f"{len(recognizers)} recognizers x {len(ambients)} segments, norm <= {n_max}"


def _complements(cfg: Config, n_max: int = 30) -> str:
    ambients = [OMEGA, omega_power(OMEGA), parse_segment("E0")]
    for name, _, R in builtin_catalog():
        for beta in ambients:
            yes = asymptotic_probability(R, beta, n_max).values
            no = asymptotic_probability(combine(R, None, "not"), beta, n_max).values
            if any(p + q != 1 for p, q in zip(yes, no)):
                raise AssertionError(f"not({name}) is not complementary over {format_segment(beta)}")
    return f"catalog x {len(ambients)} segments, n <= {n_max}"


def _telescoping(cfg: Config, n_max: int = 120) -> str:
    cases = [
        LinearSet(0, (0,), (2,), "any", omega_power(OMEGA)),
        LinearSet(1, (1, 0), (2, 3), "any", omega_power(OMEGA)),
        LinearSet(0, (0,), (2,), "any", parse_segment("E0")),
        LinearSet(1, (2, 1), (0, 2), "any", parse_segment("E0")),
    ]
    for L in cases:
        bad = telescoping_mismatches(L, n_max)
        if bad:
            raise AssertionError(f"S*T differs from c at n = {bad[:5]} for {L}")
    return f"{len(cases)} sets, n <= {n_max}"


CHECKS: list[tuple[str, Callable[[Config], str]]] = [
    ("count-vs-enumeration", _count_oracle),
    ("matula", _matula),
    ("linear-count-vs-enumeration", _linear_counts),
    ("intersection-vs-membership", _intersection),
    ("inclusion-exclusion", _inclusion_exclusion),
    ("decomposition-cover", _decomposition),
    ("density-vs-enumeration", _densities),
    ("catalog-finite-agreement", _catalog),
    ("spectrum-vs-evaluation", _spectra),
    ("complement-probability", _complements),
    ("telescoping", _telescoping),
]


def run_checks(cfg: Config | None = None) -> list[CheckResult]:
    cfg = cfg or Config()
    out = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            detail, ok = fn(cfg), True
        except (AssertionError, ValueError, ArithmeticError) as exc:
            detail, ok = str(exc), False
        out.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return out
