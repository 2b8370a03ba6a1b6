"""Exact-phase evaluation of S_N = sum_{n=1}^{N} e(a * b^n / m).

Every phase angle comes from the exact integer residue a*b^n mod m, kept
by iterated modular multiplication, so the only floating-point steps are
the final sin/cos and a compensated accumulation.  Large sums run through
a block-vectorized path whose integer work stays exact in int64 and whose
reduction tree has a fixed shape, making results bit-reproducible for a
given input regardless of who calls them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import fsum, gcd
from typing import Union

import numpy as np

from .errors import DegenerateRange, NotCoprime, NotDivisor, OutOfRange
from .numtheory import PrimeSet, factor_smooth, mult_order

TWO_PI = 2.0 * math.pi

#: Inner sums below this length use the scalar loop; longer ones use the
#: block-vectorized path.
_SCALAR_CUTOFF = 2048

#: Block length of the vectorized path (also the power-table length).
_BLOCK = 4096

#: Largest modulus for which residue*residue stays inside int64.
_INT64_SAFE_M = 3_037_000_499

#: Relative slack on inequality "holds" flags: float summation noise must
#: never fabricate a counterexample to a proven statement.
HOLDS_SLACK = 1e-9


@dataclass
class SumResult:
    """One evaluated exponential sum with its parameters."""

    value: complex
    magnitude: float
    N: int
    m: int
    a: int
    b: int


@dataclass
class DifferencingReport:
    """Both sides of the squared differencing inequality for one instance."""

    lhs_squared: float
    rhs: float
    m_prime: int
    tau: int
    holds: bool


_POWER_TABLES: dict = {}


def _power_table(b_red: int, m: int):
    """(array of b^j mod m for j < _BLOCK, b^_BLOCK mod m), cached per (b, m)."""
    key = (b_red, m)
    hit = _POWER_TABLES.get(key)
    if hit is not None:
        return hit
    pows = np.empty(_BLOCK, dtype=np.int64)
    v = 1 % m
    for j in range(_BLOCK):
        pows[j] = v
        v = v * b_red % m
    entry = (pows, v)
    if len(_POWER_TABLES) > 256:
        _POWER_TABLES.clear()
    _POWER_TABLES[key] = entry
    return entry


def _eval_scalar(a0: int, b0: int, m: int, N: int) -> complex:
    cos, sin = math.cos, math.sin
    scale = TWO_PI / m
    res = []
    ims = []
    r = a0 * b0 % m
    for _ in range(N):
        theta = scale * r
        res.append(cos(theta))
        ims.append(sin(theta))
        r = r * b0 % m
    return complex(fsum(res), fsum(ims))


def _eval_blocked(a0: int, b0: int, m: int, N: int) -> complex:
    pows, step = _power_table(b0, m)
    scale = TWO_PI / m
    re_parts = []
    im_parts = []
    lead = a0 * b0 % m  # residue at n = 1
    done = 0
    while done < N:
        size = min(_BLOCK, N - done)
        block = lead * pows[:size] % m
        theta = block * scale
        re_parts.append(float(np.sum(np.cos(theta))))
        im_parts.append(float(np.sum(np.sin(theta))))
        lead = lead * step % m
        done += size
    return complex(fsum(re_parts), fsum(im_parts))


def eval_sum(a: int, b: int, m: int, N: int) -> SumResult:
    """S_N = sum_{n=1}^{N} e(a * b^n / m) with exact integer phases.

    Coprimality of a (or b) with m is NOT required: reduced fractions with
    shared factors appear naturally inside the differencing recursion.
    """
    if m < 1:
        raise OutOfRange("modulus must be positive")
    if N < 1:
        raise OutOfRange("N must be positive")
    if b < 2:
        raise OutOfRange("b must be at least 2")
    a0 = a % m
    if m == 1 or a0 == 0:
        value = complex(N, 0.0)
    else:
        b0 = b % m
        if N < _SCALAR_CUTOFF or m > _INT64_SAFE_M:
            value = _eval_scalar(a0, b0, m, N)
        else:
            value = _eval_blocked(a0, b0, m, N)
    return SumResult(value, abs(value), N, m, a, b)


def eval_sum_reduced(a: int, b: int, m: int, N: int) -> SumResult:
    """Same value as eval_sum, but as q * S_T + S_r with T = ord(b, m).

    The full period is evaluated once; only the remainder costs extra.
    """
    if m < 1:
        raise OutOfRange("modulus must be positive")
    if N < 1:
        raise OutOfRange("N must be positive")
    if m > 1 and gcd(b, m) != 1:
        raise NotCoprime(b, m)
    T = mult_order(b, m)
    q, r = divmod(N, T)
    value = 0j
    if q:
        value += q * eval_sum(a, b, m, T).value
    if r:
        value += eval_sum(a, b, m, r).value
    return SumResult(value, abs(value), N, m, a, b)


def choose_m_prime(
    m: int,
    N: int,
    P: PrimeSet,
    alpha: Union[int, Fraction],
    gamma: Union[int, Fraction],
    nu: Union[int, Fraction],
) -> int:
    """Reduced modulus m' = Q_m * prod p^floor(x * l_p), with Q_m the radical of m.

    x solves m^x = m^(alpha/(1+alpha)) * N^((1+gamma-nu)/(1+alpha)); the
    2-exponent is bumped so that 4 | m implies 4 | m'.  Guarantees
    rad(m) | m', m' | m, and m^x <= m' <= 2 * Q_m * m^x.
    """
    if m <= 1:
        raise DegenerateRange("m must exceed 1")
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    nu = Fraction(nu)
    if alpha == 0:
        raise DegenerateRange("alpha must be non-zero")
    fac = factor_smooth(m, P)
    exps = {p: e for p, e in fac.exponents.items() if e > 0}
    drift = float(1 + gamma - nu)
    log_m = math.log(m)
    log_n = math.log(N)
    if drift * log_n >= log_m:
        raise DegenerateRange("N^(1+gamma-nu) must stay below m")
    x = (float(alpha) + drift * log_n / log_m) / float(1 + alpha)
    if not 0.0 < x < 1.0:
        raise DegenerateRange(f"target exponent x={x} outside (0, 1)")
    m_prime = 1
    for p, e in exps.items():
        # snap floors sitting within 1e-9 of an integer up to it: x is a
        # float stand-in for an exactly-defined real
        j = int(math.floor(x * e + 1e-9))
        if p == 2 and m % 4 == 0:
            j = max(j, 1)
        m_prime *= p ** (1 + j)
    return m_prime


def m_bar(b: int, m: int, m_prime: int) -> int:
    """gcd(b^tau - 1, m) with tau = ord(b, m'), all arithmetic mod m.

    gcd(x, m) = gcd(x mod m, m), so the giant power is never formed.
    Satisfies m' | result | m.
    """
    if gcd(b, m) != 1:
        raise NotCoprime(b, m)
    if m % m_prime != 0:
        raise NotDivisor(f"{m_prime} does not divide {m}")
    tau = mult_order(b, m_prime)
    return gcd((pow(b, tau, m) - 1) % m, m)


def verify_differencing(a: int, b: int, m: int, m_prime: int, N: int) -> DifferencingReport:
    """Evaluate both sides of the squared differencing inequality.

        |S_N|^2 <= m'*N + 2m' * sum_{1 <= i < N/tau} |sum_{n<=N-i*tau} e(a(b^{i*tau}-1) b^n / m)|

    Every inner numerator a*(b^{i*tau}-1) is reduced exactly mod m before
    evaluation.  The `holds` flag allows HOLDS_SLACK of relative noise.
    """
    if gcd(b, m) != 1:
        raise NotCoprime(b, m)
    if gcd(b, m_prime) != 1:
        raise NotCoprime(b, m_prime)
    tau = mult_order(b, m_prime)
    lhs_sq = eval_sum(a, b, m, N).magnitude ** 2
    step = pow(b, tau, m)
    r = 1
    inner = []
    i = 1
    while i * tau < N:
        r = r * step % m
        a_i = a * (r - 1) % m
        inner.append(eval_sum(a_i, b, m, N - i * tau).magnitude)
        i += 1
    rhs = m_prime * N + 2.0 * m_prime * fsum(inner)
    return DifferencingReport(lhs_sq, rhs, m_prime, tau, lhs_sq <= rhs * (1.0 + HOLDS_SLACK))
