import json
import math
import random
from fractions import Fraction

import pytest
import sympy

from ordlaw.checks import random_linear_set
from ordlaw.ordinals import OMEGA, enumerate_by_norm, omega_power, ordinal, parse_ordinal, parse_segment
from ordlaw.semilinear import LinearSet, SemilinearSet, linear_count_series, member
from ordlaw.tauberian import (
    RHO,
    closed_form_limit,
    density_series,
    regime_of,
    schur_polynomial,
    semilinear_limit,
    telescoping_mismatches,
)

E0 = parse_segment("E0")
W2 = omega_power(ordinal(2))
WW = omega_power(OMEGA)
EVEN = LinearSet(0, (0,), (2,), "none", OMEGA)


def residues(m, ks):
    return SemilinearSet.of([LinearSet(0, (k,), (m,), "none", OMEGA) for k in ks])


def test_regimes():
    assert regime_of(OMEGA) == "A"
    assert regime_of(parse_ordinal("w^3*2+w")) == "A"
    assert regime_of(WW) == "B"
    assert regime_of(omega_power(parse_ordinal("w^w"))) == "B"
    assert regime_of(E0) == "C"
    with pytest.raises(ValueError):
        regime_of(ordinal(5))


def test_even_density_series():
    rep = density_series(EVEN, 9)
    assert rep.values == tuple(Fraction(1 - n % 2) for n in range(10))
    assert rep.cesaro[9] == Fraction(1, 2)
    assert rep.cesaro[8] == Fraction(5, 9)


@pytest.mark.parametrize("ambient, tail", [(OMEGA, "none"), (W2, "any"), (WW, "any"), (E0, "any")])
def test_whole_segment_has_density_one(ambient, tail):
    r = 0
    rep = density_series(LinearSet(r, (0,), (1,), tail, ambient), 30)
    assert set(rep.values) == {Fraction(1)}


@pytest.mark.parametrize("seed", range(12))
def test_densities_match_enumeration(seed):
    rng = random.Random(seed)
    ambient = rng.choice([OMEGA, W2, WW])
    L = random_linear_set(rng, ambient)
    rep = density_series(L, 12)
    for n in range(13):
        xs = enumerate_by_norm(ambient, n)
        assert rep.values[n] == Fraction(sum(member(L, x) for x in xs), len(xs))
        assert 0 <= rep.values[n] <= 1


def test_cesaro_definition():
    rep = density_series(LinearSet(1, (1, 0), (2, 3), "none", W2), 40)
    for n in (0, 7, 40):
        assert rep.cesaro[n] == sum(rep.values[: n + 1]) / (n + 1)


def test_finite_ambient_skips_zero_denominators():
    rep = density_series(LinearSet(0, (0,), (2,), "none", ordinal(3)), 5)
    assert rep.skipped == (3, 4, 5)
    assert rep.values[:3] == (1, 0, 1)


def test_regime_a_closed_forms():
    rep = closed_form_limit(LinearSet(1, (0, 0), (2, 3), "none", W2))
    assert (rep.limit, rep.limit_kind, rep.d) == (Fraction(1, 6), "cesaro", 1)
    rep = closed_form_limit(LinearSet(1, (0, 0), (1, 2), "none", W2))
    assert (rep.limit, rep.d, rep.grid_limit) == (Fraction(1, 2), 2, Fraction(1))
    rep = closed_form_limit(LinearSet(1, (3, 0), (0, 2), "none", W2))
    assert (rep.limit, rep.limit_kind) == (0, "plain")


def test_regime_a_general_segment():
    # w^2*2: two top windows, each contributing 1/2 for the even-k0 set
    beta = parse_ordinal("w^2*2")
    L = LinearSet(1, (0, 0), (1, 2), "any", beta)
    rep = closed_form_limit(L)
    assert rep.limit == Fraction(1, 2)
    dens = density_series(L, 400, cap=400)
    assert abs(float(dens.cesaro[400]) - 0.5) < 0.02


def test_regime_a_cesaro_converges():
    L = LinearSet(1, (1, 2), (2, 3), "none", W2)
    rep = density_series(L, 1200, cap=1200)
    assert abs(float(rep.cesaro[1200]) - 1 / 6) < 0.01


def test_shift_consistency():
    base = LinearSet(1, (0, 0), (2, 3), "none", W2)
    shifted = LinearSet(1, (1, 2), (2, 3), "none", W2)
    s = 1 * 2 + 2 * 1
    a, b = linear_count_series(base, 80), linear_count_series(shifted, 80)
    assert b == [0] * s + a[: 81 - s]


def test_regime_b_closed_forms():
    assert closed_form_limit(LinearSet(0, (0,), (2,), "any", WW)).limit == Fraction(1, 2)
    assert closed_form_limit(LinearSet(1, (1, 0), (2, 3), "any", WW)).limit == Fraction(1, 6)
    assert closed_form_limit(LinearSet(0, (0,), (0,), "any", WW)).limit == 0
    assert closed_form_limit(LinearSet(0, (0,), (2,), "none", WW)).limit == 0
    assert closed_form_limit(LinearSet(0, (0,), (2,), "any", WW)).limit_kind == "plain"
    with pytest.raises(ValueError, match="power"):
        closed_form_limit(LinearSet(0, (0,), (2,), "any", parse_ordinal("w^w*2")))


def test_regime_b_densities_approach_limit():
    rep = density_series(LinearSet(1, (0, 0), (2, 3), "any", WW), 300, cap=300)
    values = [float(v) for v in rep.values[100:301:50]]
    # slow monotone approach to 1/6
    assert all(abs(v - 1 / 6) < 0.06 for v in values)
    assert abs(values[-1] - 1 / 6) < abs(values[0] - 1 / 6)


def test_regime_c_closed_form():
    rep = closed_form_limit(LinearSet(0, (0,), (2,), "any", E0))
    assert sympy.simplify(rep.limit - 1 / (1 + RHO)) == 0
    assert rep.schur == 1 + RHO
    assert 0 < rep.limit_value < 1
    dens = density_series(LinearSet(0, (0,), (2,), "any", E0), 120)
    assert abs(float(dens.values[120]) - rep.limit_value) < 0.01


def test_regime_c_schur_with_pinned_coordinate():
    L = LinearSet(1, (2, 1), (0, 3), "any", E0)
    S = schur_polynomial(L)
    assert sympy.simplify(S - (1 + RHO + RHO**2) / (1 - RHO**2)) == 0
    rep = closed_form_limit(L)
    assert sympy.simplify(rep.limit - RHO**5 * (1 - RHO**2) / (1 + RHO + RHO**2)) == 0
    assert closed_form_limit(LinearSet(0, (0,), (2,), "none", E0)).limit == 0


@pytest.mark.parametrize("L", [
    LinearSet(0, (0,), (2,), "any", WW),
    LinearSet(2, (0, 1, 0), (3, 0, 2), "any", WW),
    LinearSet(0, (1,), (2,), "any", E0),
    LinearSet(1, (0, 2), (2, 0), "any", parse_segment("G0")),
])
def test_telescoping(L):
    assert telescoping_mismatches(L, 100) == []


def test_semilinear_examples():
    assert semilinear_limit(residues(2, [0, 1])).limit == 1
    assert semilinear_limit(residues(3, [0, 2])).limit == Fraction(2, 3)
    S = SemilinearSet.of([LinearSet(0, (0,), (2,), "none", OMEGA), LinearSet(0, (0,), (3,), "none", OMEGA)])
    rep = semilinear_limit(S)
    assert (rep.limit, rep.limit_kind) == (Fraction(2, 3), "cesaro")
    dens = density_series(S, 600, cap=600)
    assert abs(float(dens.cesaro[600]) - 2 / 3) < 0.01


def test_semilinear_regime_c_is_rational_in_rho():
    S = SemilinearSet.of([LinearSet(0, (0,), (2,), "any", E0), LinearSet(0, (0,), (3,), "any", E0)])
    rep = semilinear_limit(S)
    expected = 1 / (1 + RHO) + 1 / (1 + RHO + RHO**2) - 1 / (1 + RHO + RHO**2 + RHO**3 + RHO**4 + RHO**5)
    assert sympy.simplify(rep.limit - expected) == 0
    assert not rep.rational
    dens = density_series(S, 120)
    assert abs(float(dens.values[120]) - rep.limit_value) < 0.01


def test_report_serialization():
    rep = density_series(EVEN, 3)
    d = json.loads(rep.to_json())
    assert d["values"] == ["1/1", "0/1", "1/1", "0/1"]
    assert rep.to_csv().splitlines()[-1] == "3,0/1,1/2"
    d = json.loads(closed_form_limit(LinearSet(0, (0,), (2,), "any", E0)).to_json())
    assert d["limit"] == "1/(rho + 1)" and d["schur"] == "rho + 1"
    assert math.isclose(d["limit_value"], 1 / (1 + d["rho"]), rel_tol=1e-9)
