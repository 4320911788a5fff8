"""Bound-formula tests: exact values, enclosure soundness, certified minima.

Non-exact expectations were derived beforehand with independent float/
high-precision oracles; the enclosure checks themselves are pure integer
arithmetic.
"""

import math
from fractions import Fraction as F

import pytest

from peelkit.errors import InputError
from peelkit.bounds import (
    Interval,
    asymptotic_epsilon,
    bound_report,
    constant_c,
    constant_exponent_identity,
    count_upper_bound,
    defense_number,
    growth_base,
    growth_power_identity,
    integer_root_floor,
    ln_interval,
    log_rule_m,
    optimal_m,
)

LN2_30 = F("693147180559945309417232121458") / 10**30  # ln 2, 30 places


def test_defense_number_values():
    assert defense_number(3, 1) == 4
    assert defense_number(1, 4) == 8
    assert defense_number(3, 2) == 6
    with pytest.raises(InputError):
        defense_number(0, 1)
    with pytest.raises(InputError):
        defense_number(2, 0)


def test_growth_base_exact_cases():
    assert growth_base(3, 1) == Interval.exact(256)
    assert growth_base(3, 2) == Interval.exact(125)


def test_growth_base_enclosure_soundness():
    enc = growth_base(3, 3)
    assert enc.lo**3 <= 6**8 <= enc.hi**3
    assert enc.width <= F(1, 2**30)
    assert 118 < enc.lo <= enc.hi < 119
    # float cross-check: enclosure is far wider than float error here
    assert enc.lo < F(6 ** (8 / 3)) < enc.hi
    with pytest.raises(InputError):
        growth_base(1, 2)


def test_count_upper_bound_values():
    assert count_upper_bound(3, 1, 3) == Interval.exact(4096)
    assert count_upper_bound(2, 1, 9) == Interval.exact(27**7)
    assert count_upper_bound(2, 1, 2) == Interval.exact(1)
    enc = count_upper_bound(3, 2, 2)
    assert enc.lo**2 <= 125 <= enc.hi**2
    assert enc.lo < F(125**0.5) < enc.hi
    with pytest.raises(InputError):
        count_upper_bound(3, 1, 1)
    with pytest.raises(InputError):
        count_upper_bound(3, 1, 0)


def test_constant_c_values():
    assert constant_c(3, 1) == Interval.exact(F(1, 4096))
    enc = constant_c(3, 2)
    assert enc.lo < F(125**-1.5) < enc.hi
    assert enc.width < F(1, 10**6)


def test_proof_identities_on_grid():
    for d in (3, 4, 5):
        for m in (1, 2, 3, 4):
            assert growth_power_identity(d, m)
            assert constant_exponent_identity(d, m)
    # m = 1 is the equality case of the exponent comparison
    assert F(3, 2) == F(3 + 1 - 1, 3 + 1 - 2)


def test_optimal_m_d3_is_3_with_certified_ordering():
    got = optimal_m(3, 10)
    assert got.m == 3
    assert got.log_rule_m == 3
    assert got.growth == growth_base(3, 3)
    # independent ordering check: cross-powered integer comparisons
    for m in range(1, 11):
        if m == 3:
            continue
        lhs = 6 ** (8 * m)  # a(3,3)^(3m) base side
        rhs = (3 + m) ** ((3 + 2 * m - 1) * 3)
        assert lhs < rhs, f"a(3,3) should beat a(3,{m})"


def test_optimal_m_d4_is_5():
    got = optimal_m(4, 14)
    assert got.m == 5
    assert got.log_rule_m == 5
    # spot confirmations with raw integers
    assert 9**52 < 8**55  # beats m=4
    assert 9**26 < 10**25  # beats m=6


def test_optimal_m_limit_errors():
    with pytest.raises(InputError):
        optimal_m(3, 4)  # below the required window
    with pytest.raises(InputError):
        optimal_m(4, 9)  # window too small to close the global certificate
    with pytest.raises(InputError):
        optimal_m(2, 20)


@pytest.mark.parametrize("d,expected", [(3, 3), (4, 5), (10, 23), (20, 59)])
def test_log_rule_floor(d, expected):
    assert log_rule_m(d) == expected


def test_ln_interval_brackets_reference():
    enc = ln_interval(F(2), 40)
    assert enc.width <= F(1, 2**40)
    assert enc.lo <= LN2_30 <= enc.hi
    assert ln_interval(F(1), 30).contains(0)
    # ln(1/2) + ln(2) = 0 must hold at interval level
    total = ln_interval(F(1, 2), 40) + enc
    assert total.contains(0)
    # ln(100) = 2 ln(10); reference to 30 places is finer than the enclosure
    ln100_ref = 2 * F("2302585092994045684017991454684") / 10**30
    big = ln_interval(100, 40)
    assert big.lo <= ln100_ref <= big.hi
    with pytest.raises(InputError):
        ln_interval(0, 10)
    with pytest.raises(InputError):
        ln_interval(F(-3), 10)


def test_asymptotic_epsilon_values_and_monotonicity():
    enc = asymptotic_epsilon(3, 20)
    ref = (
        1 / math.log(3)
        + 2 * math.log(2 * math.log(3)) / math.log(3)
        + math.log(2 * math.log(3)) / math.log(3) ** 2
    )
    assert enc.width <= F(1, 2**20)
    assert enc.lo < F(ref) < enc.hi
    assert 2 < enc.lo < enc.hi < 4
    # strictly decreasing along a doubling ladder
    e10 = asymptotic_epsilon(10, 20)
    e20 = asymptotic_epsilon(20, 20)
    e40 = asymptotic_epsilon(40, 20)
    assert e10.lo > e20.hi > e40.hi
    with pytest.raises(InputError):
        asymptotic_epsilon(2)


def test_interval_arithmetic():
    a = Interval(F(1), F(2))
    b = Interval(F(-3), F(5))
    assert (a + b) == Interval(F(-2), F(7))
    assert (a * b) == Interval(F(-6), F(10))
    assert (-a) == Interval(F(-2), F(-1))
    assert (a * F(-2)) == Interval(F(-4), F(-2))
    assert a.reciprocal() == Interval(F(1, 2), F(1))
    with pytest.raises(InputError):
        b.reciprocal()
    with pytest.raises(InputError):
        Interval(F(2), F(1))
    assert Interval(F(1187, 10), F(1188, 10)).approx(2) == "118.75"
    assert Interval.exact(F(-7, 2)).approx(1) == "-3.5"


def test_integer_root_floor():
    assert integer_root_floor(1679616, 3) == 118
    assert integer_root_floor(124, 2) == 11
    assert integer_root_floor(0, 5) == 0
    assert integer_root_floor(1, 7) == 1
    assert integer_root_floor(32, 5) == 2
    assert integer_root_floor(2**90 + 1, 9) == 1024
    with pytest.raises(InputError):
        integer_root_floor(-1, 2)


def test_bound_report_assembly():
    rep = bound_report(3)
    assert rep.m == rep.optimal_m == 3
    assert rep.log_rule_m == 3
    assert rep.defense_number == 8
    assert rep.bound_value is None

    rep2 = bound_report(3, m=1, n=3)
    assert rep2.growth_base == Interval.exact(256)
    assert rep2.bound_value == Interval.exact(4096)
    assert rep2.constant_c == Interval.exact(F(1, 4096))
    assert rep2.defense_number == 4

    rep4 = bound_report(4)  # must auto-widen the search window internally
    assert rep4.m == rep4.optimal_m == 5
    assert rep4.log_rule_m == 5

    with pytest.raises(InputError):
        bound_report(2)
