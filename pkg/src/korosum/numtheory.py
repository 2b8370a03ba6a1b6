"""Exact integer and rational number theory over smooth moduli.

Everything structural here is exact: integers are arbitrary precision,
p-adic valuations of b**e - 1 are found by modular probing (never by
materializing the giant power itself), and the handful of real-valued
quantities are returned as certified upper bounds via a small uniform
inflation, so downstream inequalities never fail from rounding down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Tuple, Union

from .errors import (
    InternalError,
    NonPositiveAlpha,
    NotCoprime,
    NotDivisor,
    NotSmooth,
    OutOfRange,
)

Rational = Union[int, Fraction]

#: Relative inflation applied to certified upper-bound reals.  One part in
#: 1e12 dominates the worst-case accumulated libm rounding of every formula
#: in this package while staying far below every test tolerance.
UPPER_SLACK = 1e-12


def round_up(x: float) -> float:
    """Inflate a non-negative float so it certifiably over-reports."""
    return x * (1.0 + UPPER_SLACK)


def is_prime(p: int) -> bool:
    """Trial division primality check; prime sets are small, so this is enough."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeSet:
    """The ambient environment: distinct primes p_1 < ... < p_s."""

    primes: Tuple[int, ...]

    def __post_init__(self):
        if len(self.primes) == 0:
            raise OutOfRange("prime set must be non-empty")
        if list(self.primes) != sorted(set(self.primes)):
            raise OutOfRange("primes must be strictly ascending and distinct")
        for p in self.primes:
            if not is_prime(p):
                raise OutOfRange(f"{p} is not prime")

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(tuple(sorted(primes)))

    @property
    def s(self) -> int:
        return len(self.primes)

    @cached_property
    def Q(self) -> int:
        q = 1
        for p in self.primes:
            q *= p
        return q

    def require_coprime(self, b: int) -> None:
        for p in self.primes:
            if b % p == 0:
                raise NotCoprime(b, p)

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)


@dataclass
class SmoothFactorization:
    """n = prod p_i ** exponents[p_i] over the primes of one PrimeSet."""

    n: int
    exponents: Dict[int, int]

    def radical(self) -> int:
        r = 1
        for p, e in self.exponents.items():
            if e > 0:
                r *= p
        return r


@dataclass
class ModulusStructure:
    """Order decomposition ord(b, m) = (m / m1) * tau_prime.

    tau1 is the order of b modulo the radical of m; mu flags the one parity
    correction (m even, tau1 odd, b = 3 mod 4); beta[p] is the exact
    valuation p^beta || b**((mu+1)*tau1) - 1; m1 clips those valuations to
    the exponents of m.
    """

    m: int
    tau1: int
    mu: int
    tau_prime: int
    beta: Dict[int, int]
    m1: int
    order: int


def factor_smooth(n: int, P: PrimeSet) -> SmoothFactorization:
    """Exact exponent vector of n over P; rejects non-smooth n."""
    if n < 1:
        raise OutOfRange(f"n must be positive, got {n}")
    exps = {p: 0 for p in P}
    rest = n
    for p in P:
        while rest % p == 0:
            rest //= p
            exps[p] += 1
    if rest != 1:
        raise NotSmooth(n, rest)
    return SmoothFactorization(n, exps)


def mod_pow(b: int, e: int, m: int) -> int:
    """b**e mod m by binary square-and-multiply, O(log e) multiplications."""
    if e < 0:
        raise OutOfRange("exponent must be non-negative")
    if m < 1:
        raise OutOfRange("modulus must be positive")
    result = 1 % m
    base = b % m
    while e:
        if e & 1:
            result = result * base % m
        base = base * base % m
        e >>= 1
    return result


def factorize(n: int) -> Dict[int, int]:
    """Full factorization by trial division (oracle-grade, desk-scale n)."""
    if n < 1:
        raise OutOfRange(f"n must be positive, got {n}")
    out: Dict[int, int] = {}
    rest = n
    for p in (2, 3):
        while rest % p == 0:
            out[p] = out.get(p, 0) + 1
            rest //= p
    f = 5
    while f * f <= rest:
        while rest % f == 0:
            out[f] = out.get(f, 0) + 1
            rest //= f
        f += 2
    if rest > 1:
        out[rest] = out.get(rest, 0) + 1
    return out


def euler_phi(n: int) -> int:
    """Euler totient from the factorization."""
    phi = 1
    for p, e in factorize(n).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


@lru_cache(maxsize=65536)
def carmichael_lambda(n: int) -> int:
    """Carmichael function: exponent of the unit group mod n."""
    lam = 1
    for p, e in factorize(n).items():
        if p == 2:
            lp = 1 if e == 1 else (2 if e == 2 else 2 ** (e - 2))
        else:
            lp = (p - 1) * p ** (e - 1)
        lam = lam * lp // math.gcd(lam, lp)
    return lam


def mult_order_naive(b: int, m: int) -> int:
    """Least t >= 1 with b**t = 1 mod m, by direct iteration (the oracle).

    Iterations are capped at carmichael_lambda(m): the order must divide
    it, so running past the cap is an internal error, not a search miss.
    """
    if m < 1:
        raise OutOfRange("modulus must be positive")
    if m == 1:
        return 1
    if math.gcd(b, m) != 1:
        raise NotCoprime(b, m)
    cap = carmichael_lambda(m)
    r = b % m
    t = 1
    while r != 1:
        r = r * b % m
        t += 1
        if t > cap:
            raise InternalError(f"order of {b} mod {m} exceeded lambda={cap}")
    return t


@lru_cache(maxsize=65536)
def mult_order(b: int, m: int) -> int:
    """Fast multiplicative order via exponent reduction from lambda(m)."""
    if m < 1:
        raise OutOfRange("modulus must be positive")
    if m == 1:
        return 1
    if math.gcd(b, m) != 1:
        raise NotCoprime(b, m)
    t = carmichael_lambda(m)
    for q in factorize(t):
        while t % q == 0 and pow(b, t // q, m) == 1:
            t //= q
    return t


def _val_of_power_minus_one(b: int, e: int, p: int) -> int:
    """v_p(b**e - 1), assuming p | b**e - 1, by probing mod p, p^2, p^3, ...

    Each probe is one modular exponentiation, so b**e is never formed.
    """
    if pow(b, e, p) != 1:
        return 0
    v = 1
    pk = p * p
    while pow(b, e, pk) == 1:
        v += 1
        pk *= p
    return v


def mult_order_structured(b: int, m: int, P: PrimeSet) -> ModulusStructure:
    """Order of b mod m from the structure of m alone (no iteration in m).

    tau1 = ord(b, rad m); mu = 1 iff m even, tau1 odd and b = 3 mod 4;
    beta[p] from p^beta || b**((mu+1)*tau1) - 1; m1 clips beta to the
    exponents of m; tau' doubles tau1 exactly when mu = 1 and 4 | m.
    The resulting order is (m/m1) * tau'.
    """
    if b < 2:
        raise OutOfRange("b must be at least 2")
    if math.gcd(b, m) != 1:
        raise NotCoprime(b, m)
    fac = factor_smooth(m, P)
    if m == 1:
        return ModulusStructure(1, 1, 0, 1, {}, 1, 1)
    primes_of_m = [p for p in P if fac.exponents[p] > 0]
    tau1 = mult_order(b, fac.radical())
    mu = 1 if (m % 2 == 0 and tau1 % 2 == 1 and b % 4 == 3) else 0
    e = (mu + 1) * tau1
    beta = {p: _val_of_power_minus_one(b, e, p) for p in primes_of_m}
    m1 = 1
    for p in primes_of_m:
        m1 *= p ** min(fac.exponents[p], beta[p])
    tau_prime = 2 * tau1 if (mu == 1 and m % 4 == 0) else tau1
    return ModulusStructure(m, tau1, mu, tau_prime, beta, m1, (m // m1) * tau_prime)


@lru_cache(maxsize=None)
def capital_m(P: PrimeSet, b: int) -> int:
    """Uniform ceiling M for m1(m) over all P-smooth m.

    M = prod p ** v_p(b**(2*ord(b, Q)) - 1) with Q the product of the
    primes.  Every beta from mult_order_structured is bounded by the
    matching valuation here, and M <= b**(2Q).
    """
    P.require_coprime(b)
    e = 2 * mult_order(b, P.Q)
    M = 1
    for p in P:
        M *= p ** _val_of_power_minus_one(b, e, p)
    return M


def capital_m_log_bound_holds(P: PrimeSet, b: int) -> bool:
    """Check M <= b**(2Q) in log space; b**(2Q) is never constructed."""
    M = capital_m(P, b)
    return math.log(M) <= 2 * P.Q * math.log(b) * (1.0 + UPPER_SLACK)


def c_p_alpha(P: PrimeSet, alpha: Rational) -> float:
    """prod p^a / (p^a - 1) over the prime set, as a certified upper bound.

    This dominates both sum_{d|n} d^a / n^a and sum_{d|n} d^(-a) for every
    P-smooth n and a > 0.
    """
    if alpha <= 0:
        raise NonPositiveAlpha(f"alpha must be positive, got {alpha}")
    a = float(alpha)
    out = 1.0
    for p in P:
        pa = p ** a
        out *= pa / (pa - 1.0)
    return round_up(out)


def divisor_power_sum(n: int, alpha: Rational, P: PrimeSet | None = None) -> float:
    """sum_{d|n} d**alpha via the product over prime powers.

    alpha may be negative (the reciprocal-power sum) or zero (the divisor
    count).  When P is given, n must be P-smooth.
    """
    if n < 1:
        raise OutOfRange(f"n must be positive, got {n}")
    exps = factor_smooth(n, P).exponents if P is not None else factorize(n)
    a = float(alpha)
    total = 1.0
    for p, e in exps.items():
        total *= sum(p ** (a * j) for j in range(e + 1))
    return total


def phi_d(n: int, d: int, x: Union[int, float, Fraction]) -> int:
    """Number of i in [1, x) with gcd(i, n) = d.

    Such i are exactly d*j with j < x/d and gcd(j, n/d) = 1.
    """
    if n < 1 or d < 1 or n % d != 0:
        raise NotDivisor(f"{d} does not divide {n}")
    if x <= 0:
        raise OutOfRange("x must be positive")
    nd = n // d
    count = 0
    j = 1
    while d * j < x:
        if math.gcd(j, nd) == 1:
            count += 1
        j += 1
    return count


def smooth_numbers(P: PrimeSet, limit: int, lo: int = 1) -> List[int]:
    """All P-smooth integers in [lo, limit], ascending."""
    if limit < 1:
        return []
    values = [1]
    for p in P:
        grown = []
        for v in values:
            pv = v
            while pv <= limit:
                grown.append(pv)
                pv *= p
        values = grown
    return sorted(v for v in values if v >= lo)
