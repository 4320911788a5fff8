"""Exact values and rigorous rational enclosures for the counting bounds.

Every irrational quantity (fractional powers, logarithms) is reported as a
rational interval [lo, hi] guaranteed to contain it; every comparison that
decides a check is performed on exact integers or on such enclosures.  No
floating point participates in any decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputError

DEFAULT_PRECISION = 30


@dataclass(frozen=True)
class Interval:
    """Closed rational interval certifying lo <= value <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise InputError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @staticmethod
    def exact(x) -> "Interval":
        f = Fraction(x)
        return Interval(f, f)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval") -> "Interval":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Interval):
            products = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return Interval(min(products), max(products))
        f = Fraction(other)
        if f >= 0:
            return Interval(self.lo * f, self.hi * f)
        return Interval(self.hi * f, self.lo * f)

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise InputError("interval straddles zero; cannot invert")
        return Interval(1 / self.hi, 1 / self.lo)

    def approx(self, digits: int = 6) -> str:
        """Decimal rendition of the midpoint, truncated; convenience only."""
        mid = (self.lo + self.hi) / 2
        sign = "-" if mid < 0 else ""
        mid = abs(mid)
        scaled = mid.numerator * 10**digits // mid.denominator
        whole, frac = divmod(scaled, 10**digits)
        return f"{sign}{whole}.{str(frac).zfill(digits)}"


def integer_root_floor(n: int, q: int) -> int:
    """Largest x with x**q <= n (n >= 0, q >= 1), by integer Newton iteration."""
    if n < 0 or q < 1:
        raise InputError("integer root requires n >= 0 and q >= 1")
    if n in (0, 1) or q == 1:
        return n if q >= 1 else n
    x = 1 << ((n.bit_length() + q - 1) // q + 1)
    while True:
        nxt = ((q - 1) * x + n // x ** (q - 1)) // q
        if nxt >= x:
            break
        x = nxt
    while x**q > n:
        x -= 1
    while (x + 1) ** q <= n:
        x += 1
    return x


def _root_enclosure(n: int, q: int, precision: int) -> Interval:
    """Interval [lo, hi] with lo**q <= n <= hi**q and width <= 2**-precision."""
    floor_root = integer_root_floor(n, q)
    if floor_root**q == n:
        return Interval.exact(floor_root)
    lo = Fraction(floor_root)
    hi = Fraction(floor_root + 1)
    tol = Fraction(1, 2**precision)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid**q <= n:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)


def _integer_power_enclosure(base: int, exponent: Fraction, precision: int) -> Interval:
    """Enclosure of base**exponent for integer base >= 2, rational exponent >= 0."""
    if base < 2 or exponent < 0:
        raise InputError("power enclosure requires base >= 2 and exponent >= 0")
    p, q = exponent.numerator, exponent.denominator
    if q == 1:
        return Interval.exact(Fraction(base**p))
    return _root_enclosure(base**p, q, precision)


def _atanh_series(z: Fraction, terms: int) -> Interval:
    """Enclosure of 2*atanh(z) = ln((1+z)/(1-z)) for |z| < 1, via the odd series."""
    z2 = z * z
    total = Fraction(0)
    power = z
    for i in range(terms + 1):
        total += power / (2 * i + 1)
        power *= z2
    total *= 2
    tail = 2 * abs(z) ** (2 * terms + 3) / ((1 - z2) * (2 * terms + 3))
    return Interval(total - tail, total + tail)


def ln_interval(x, precision: int = DEFAULT_PRECISION) -> Interval:
    """Rigorous enclosure of ln(x) for rational x > 0, width <= 2**-precision."""
    x = Fraction(x)
    if x <= 0:
        raise InputError("logarithm requires a positive argument")
    k = 0
    y = x
    while y >= Fraction(3, 2):
        y /= 2
        k += 1
    while y < Fraction(3, 4):
        y *= 2
        k -= 1
    tol = Fraction(1, 2**precision)
    z = (y - 1) / (y + 1)
    terms = 4
    while True:
        result = _atanh_series(z, terms)
        if k:
            result = result + _atanh_series(Fraction(1, 3), terms) * k
        if result.width <= tol:
            return result
        terms *= 2
        if terms > 1 << 20:
            raise AssertionError("logarithm series failed to converge")


def defense_number(d: int, m: int) -> int:
    """Minimum number of points that defend the origin for m steps in dimension d."""
    if d < 1 or m < 1:
        raise InputError("defense_number requires d >= 1 and m >= 1")
    return d + 2 * m - 1


def growth_base(d: int, m: int, precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of (d+m)**((d+2m-1)/m); exact when m divides d+2m-1."""
    if d < 2 or m < 1:
        raise InputError("growth_base requires d >= 2 and m >= 1")
    D = defense_number(d, m)
    return _integer_power_enclosure(d + m, Fraction(D, m), precision)


def count_upper_bound(d: int, m: int, n: int, precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of c * a**n, the per-point exponential upper bound on counts.

    Here a = (d+m)**((d+2m-1)/m) and c = a**(-d/(d-1)); combined exactly into
    a single rational power of d+m before enclosing.
    """
    if d < 2 or m < 1:
        raise InputError("count_upper_bound requires d >= 2 and m >= 1")
    if n < 2:
        raise InputError("count_upper_bound applies to n >= 2")
    D = defense_number(d, m)
    exponent = Fraction(D * (n * (d - 1) - d), m * (d - 1))
    return _integer_power_enclosure(d + m, exponent, precision)


def constant_c(d: int, m: int, precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of the bound's constant a**(-d/(d-1))."""
    if d < 2 or m < 1:
        raise InputError("constant_c requires d >= 2 and m >= 1")
    D = defense_number(d, m)
    exponent = Fraction(D * d, m * (d - 1))
    return _integer_power_enclosure(d + m, exponent, precision).reciprocal()


def _growth_less(d: int, m1: int, m2: int) -> bool:
    """Exact test a(d, m1) < a(d, m2) by cross-powering to integers."""
    lhs = (d + m1) ** ((d + 2 * m1 - 1) * m2)
    rhs = (d + m2) ** ((d + 2 * m2 - 1) * m1)
    return lhs < rhs


def log_rule_m(d: int) -> int:
    """floor(d * ln d), certified by refining the logarithm enclosure."""
    if d < 2:
        raise InputError("log_rule_m requires d >= 2")
    precision = 20
    while precision <= 320:
        enc = ln_interval(Fraction(d), precision) * d
        lo, hi = math.floor(enc.lo), math.floor(enc.hi)
        if lo == hi:
            return lo
        precision *= 2
    raise AssertionError("floor of d*ln(d) failed to certify")


@dataclass(frozen=True)
class GrowthMinimum:
    """Certified minimizer of the growth base over m, with the log-rule choice."""

    m: int
    growth: Interval
    log_rule_m: int


def optimal_m(d: int, search_limit: int, precision: int = DEFAULT_PRECISION) -> GrowthMinimum:
    """The m in [1, search_limit] minimizing the growth base, certified globally.

    All comparisons are exact integer cross-powers; ties resolve to the
    smaller m.  A closing certificate checks that every m beyond the limit is
    strictly worse (their growth base exceeds (d+limit+1)^2), so the returned
    minimum is global, not just within the window.
    """
    if d < 3:
        raise InputError("optimal_m requires d >= 3")
    rule = log_rule_m(d)
    if search_limit < rule + d:
        raise InputError(
            f"search_limit {search_limit} is too small; need at least {rule + d}"
        )
    best = 1
    for m in range(2, search_limit + 1):
        if _growth_less(d, m, best):
            best = m
    # growth base of any m > limit exceeds (d+m)^2 >= (d+limit+1)^2; certify
    # the winner sits at or below that threshold
    if (d + best) ** (d + 2 * best - 1) > (d + search_limit + 1) ** (2 * best):
        raise InputError(
            f"search_limit {search_limit} cannot certify a global minimum for d={d}; "
            "every m beyond the limit has growth base above (d+m)^2, so the limit "
            "must satisfy (d+limit+1)^2 >= the candidate minimum"
        )
    return GrowthMinimum(m=best, growth=growth_base(d, best, precision), log_rule_m=rule)


def asymptotic_epsilon(d: int, precision: int = 20) -> Interval:
    """Enclosure of 1/ln d + 2 ln(2 ln d)/ln d + ln(2 ln d)/(ln d)^2.

    The threshold sequence governing the large-d exponent overhead; decreases
    toward zero as d grows.
    """
    if d < 3:
        raise InputError("asymptotic_epsilon requires d >= 3")
    tol = Fraction(1, 2**precision)
    inner = precision + 8
    while inner <= 4096:
        L = ln_interval(Fraction(d), inner)
        lnln = Interval(
            ln_interval(2 * L.lo, inner).lo,
            ln_interval(2 * L.hi, inner).hi,
        )
        inv = L.reciprocal()
        eps = inv + 2 * (lnln * inv) + lnln * (inv * inv)
        if eps.width <= tol:
            return eps
        inner *= 2
    raise AssertionError("epsilon enclosure failed to converge")


def growth_power_identity(d: int, m: int) -> bool:
    """Check (d+m)^D equals the m-th power of the growth base (exact or bracketing)."""
    D = defense_number(d, m)
    n = (d + m) ** D
    a = growth_base(d, m)
    if a.is_exact:
        return a.lo**m == n
    return a.lo**m <= n <= a.hi**m


def constant_exponent_identity(d: int, m: int) -> bool:
    """Check a^(-(d+m-1)/(d+m-2)) >= a^(-d/(d-1)): exact exponent comparison.

    Since the growth base exceeds 1, this reduces to d/(d-1) >= (d+m-1)/(d+m-2).
    """
    if d < 2 or m < 1:
        raise InputError("identity check requires d >= 2 and m >= 1")
    return Fraction(d, d - 1) >= Fraction(d + m - 1, d + m - 2)


@dataclass(frozen=True)
class BoundReport:
    """Everything the bound formulas say about one (d, m, n) configuration."""

    d: int
    m: int
    n: int | None
    defense_number: int
    growth_base: Interval
    constant_c: Interval
    bound_value: Interval | None
    optimal_m: int
    log_rule_m: int


def bound_report(
    d: int,
    m: int | None = None,
    n: int | None = None,
    precision: int = DEFAULT_PRECISION,
    search_limit: int | None = None,
) -> BoundReport:
    """Assemble the full report; m defaults to the certified optimal choice."""
    if d < 3:
        raise InputError("bound reports require d >= 3")
    if search_limit is not None:
        opt = optimal_m(d, search_limit, precision)
    else:
        # widen the window until the global-minimum certificate goes through
        limit = log_rule_m(d) + d
        for _ in range(20):
            try:
                opt = optimal_m(d, limit, precision)
                break
            except InputError:
                limit *= 2
        else:
            raise InputError(f"could not certify an optimal m for d={d}")
    mm = m if m is not None else opt.m
    bound = count_upper_bound(d, mm, n, precision) if n is not None else None
    return BoundReport(
        d=d,
        m=mm,
        n=n,
        defense_number=defense_number(d, mm),
        growth_base=growth_base(d, mm, precision),
        constant_c=constant_c(d, mm, precision),
        bound_value=bound,
        optimal_m=opt.m,
        log_rule_m=opt.log_rule_m,
    )
