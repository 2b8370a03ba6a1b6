"""The explicit bound system: exact rational exponents, certified constants.

Level-k bounds have the shape

    |S_N| <= (A_k m^alpha_k N^gamma_k + B_k m^(-alpha_k) N^nu_k) (1 + log m)^(2^-k)

with alpha_k = 1/(2^(k+2)-2) and gamma_k, nu_k, A_k, B_k defined by a
recursion seeded at (gamma, nu, A, B) = (0, 1, 1, M).  Exponents live in
exact rational arithmetic forever; constants live in round-up floating
point so the upper-bound contract survives the conversion.  "log" is the
natural logarithm throughout; "log2" is base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Tuple, Union

from .errors import EpsilonOutOfRange, NotInterior, OutOfRange, RangeViolation
from .numtheory import (
    PrimeSet,
    c_p_alpha,
    capital_m,
    factor_smooth,
    mult_order_structured,
    round_up,
)

LN2 = math.log(2.0)

#: Decay rate of the prime-power comparator bound 3N exp(-g (log N)^3 / (log p^a)^2).
PRIME_POWER_GAMMA = 1.0 / (2.0 * 10.0**6)

#: Coefficient of the advisory decay envelope exp(-coeff (log log m)^(3/2)).
#: Any value below log(2)/8 is admissible asymptotically; half of that
#: absorbs the lower-order factors at desk scale.
DECAY_COEFF = LN2 / 16.0

#: Levels used for the cached certified limit constant (tail ~ 2e-34).
_C_LEVELS = 120


@dataclass(frozen=True)
class ExponentState:
    """Exact rational exponents at one level, plus both c_k extractions.

    c_gamma and c_nu rewrite gamma_k = 1 - (k+3+c)/2^(k+2) and
    nu_k = 1 + (k-1+c)/2^(k+2); they coincide exactly.
    """

    k: int
    alpha: Fraction
    gamma: Fraction
    nu: Fraction
    c_gamma: Fraction
    c_nu: Fraction


@dataclass(frozen=True)
class ConstantState:
    """Certified-upper constants at one level."""

    k: int
    a_k: float
    b_k: float
    M: int
    Q: int
    c_half: float
    c_one: float
    certified: bool = True


@dataclass
class BoundReport:
    """One evaluated bound; bound_value = (term_main + term_secondary) * logfac."""

    m: int
    N: int
    k: int
    bound_value: float
    term_main: float
    term_secondary: float
    nontrivial: bool
    source: str


@dataclass(frozen=True)
class RationalInterval:
    """[lo, hi] with exact rational endpoints; hi = None means +infinity."""

    lo: Fraction
    hi: Optional[Fraction]

    def __post_init__(self):
        if self.lo <= 0:
            raise OutOfRange("interval must sit inside the positive axis")
        if self.hi is not None and self.hi < self.lo:
            raise OutOfRange("interval endpoints out of order")

    def contains(self, x, strict: bool = False) -> bool:
        if strict:
            return self.lo < x and (self.hi is None or x < self.hi)
        return self.lo <= x and (self.hi is None or x <= self.hi)

    def contains_interval(self, other: "RationalInterval") -> bool:
        if other.lo < self.lo:
            return False
        if self.hi is None:
            return True
        return other.hi is not None and other.hi <= self.hi

    def overlaps(self, other: "RationalInterval") -> bool:
        lo = max(self.lo, other.lo)
        if self.hi is None:
            return other.hi is None or other.hi >= lo
        if other.hi is None:
            return self.hi >= lo
        return min(self.hi, other.hi) >= lo


@dataclass(frozen=True)
class LimitConstant:
    """The scaled-difference sequence and its limit with a certified tail."""

    eps_primes: Tuple[Fraction, ...]
    c: float
    tail_bound: float
    c_exact: Fraction
    tail_exact: Fraction


@dataclass(frozen=True)
class KConstants:
    """Closed-form constants; K1 and K3 also carried in log space since
    b**(4Q) overflows floats already for mid-sized prime sets."""

    k1: float
    k2: float
    k3: float
    log_k1: float
    log_k3: float

    def k1_mantissa_exponent(self) -> Tuple[float, int]:
        e10 = self.log_k1 / math.log(10.0)
        exp = math.floor(e10)
        return 10.0 ** (e10 - exp), exp


@dataclass(frozen=True)
class BestK:
    """Exhaustive minimizer over levels, plus the interval-based prediction."""

    k_star: int
    report: BoundReport
    k_hat: Optional[int]


@dataclass(frozen=True)
class CorollaryResult:
    """Constants realizing |S_N| <= C m^(-delta) N (1+log m) for N >= m^epsilon."""

    k: int
    delta: Fraction
    big_c: float
    log_big_c: float
    segments: Tuple[Tuple[int, RationalInterval], ...]
    threshold_n: Callable[[Union[int, float]], float]
    decay: Callable[[Union[int, float]], float]


_EXP_TABLE: List[ExponentState] = []


def exponents(k: int) -> ExponentState:
    """Exact exponents at level k from the two-term recursion.

    gamma' = (1 + gamma + alpha*nu) / (2(1+alpha))
    nu'    = (1 + nu)/2 + (1 + gamma - nu) * alpha / (2(1+alpha))
    alpha' = alpha / (2(1+alpha)), seeded (alpha, gamma, nu) = (1/2, 0, 1).
    """
    if k < 0:
        raise OutOfRange("level must be non-negative")
    while len(_EXP_TABLE) <= k:
        if not _EXP_TABLE:
            state = _make_exponent_state(0, Fraction(1, 2), Fraction(0), Fraction(1))
        else:
            prev = _EXP_TABLE[-1]
            al, ga, nu = prev.alpha, prev.gamma, prev.nu
            den = 2 * (1 + al)
            state = _make_exponent_state(
                prev.k + 1,
                al / den,
                (1 + ga + al * nu) / den,
                Fraction(1 + nu, 2) + (1 + ga - nu) * al / den,
            )
        _EXP_TABLE.append(state)
    return _EXP_TABLE[k]


def _make_exponent_state(k: int, alpha: Fraction, gamma: Fraction, nu: Fraction) -> ExponentState:
    scale = Fraction(2) ** (k + 2)
    return ExponentState(
        k=k,
        alpha=alpha,
        gamma=gamma,
        nu=nu,
        c_gamma=scale * (1 - gamma) - (k + 3),
        c_nu=scale * (nu - 1) - (k - 1),
    )


@lru_cache(maxsize=None)
def constants(k: int, P: PrimeSet, b: int) -> ConstantState:
    """Certified-upper A_k, B_k for the prime environment (P, b).

    A_k = (2^(s+2) Q (A+B) C_{P,alpha} + 2Q + 2 A M C_{P,1+alpha})^(1/2)
    B_k = (2^(1+alpha) B M Q^alpha C_{P,1-alpha})^(1/2)

    with alpha taken at level k-1, seeded A_0 = 1, B_0 = M.  Every step is
    inflated upward, so the stored values never under-report.
    """
    if k < 0:
        raise OutOfRange("level must be non-negative")
    M = capital_m(P, b)
    Q, s = P.Q, P.s
    c_half = c_p_alpha(P, Fraction(1, 2))
    c_one = c_p_alpha(P, Fraction(1))
    if k == 0:
        return ConstantState(0, 1.0, float(M), M, Q, c_half, c_one)
    prev = constants(k - 1, P, b)
    al = exponents(k - 1).alpha
    c_al = c_p_alpha(P, al)
    c_one_plus = c_p_alpha(P, 1 + al)
    c_one_minus = c_p_alpha(P, 1 - al)
    a_sq = round_up(
        2.0 ** (s + 2) * Q * (prev.a_k + prev.b_k) * c_al
        + 2.0 * Q
        + 2.0 * prev.a_k * M * c_one_plus
    )
    b_sq = round_up(2.0 ** (1 + float(al)) * prev.b_k * M * Q ** float(al) * c_one_minus)
    return ConstantState(
        k, round_up(math.sqrt(a_sq)), round_up(math.sqrt(b_sq)), M, Q, c_half, c_one
    )


def epsilon_prime_and_c(k_max: int, tol: float = 0.0) -> LimitConstant:
    """Iterate e'_k = (1 - 2/(2^(k+1)-1)) e'_{k-1} + (1-2k)/(2^(k+1)-1) from e'_0 = 1.

    The sequence is Cauchy with |e'_k - c| <= (k+7)/2^(k-1); iteration
    stops once that certified tail drops to tol (or at k_max).
    """
    if k_max < 0:
        raise OutOfRange("k_max must be non-negative")
    eps = [Fraction(1)]
    k = 0
    tail = _tail_bound(0)
    while k < k_max and tail > tol:
        k += 1
        d = 2 ** (k + 1) - 1
        eps.append((1 - Fraction(2, d)) * eps[-1] + Fraction(1 - 2 * k, d))
        tail = _tail_bound(k)
    return LimitConstant(
        eps_primes=tuple(eps),
        c=float(eps[-1]),
        tail_bound=round_up(float(tail)),
        c_exact=eps[-1],
        tail_exact=tail,
    )


def _tail_bound(k: int) -> Fraction:
    return Fraction(k + 7) * Fraction(2) ** (1 - k)


@lru_cache(maxsize=1)
def certified_c() -> Tuple[Fraction, Fraction]:
    """Enclosure [lo, hi] of the limit constant, width ~ 4e-34."""
    lc = epsilon_prime_and_c(_C_LEVELS)
    return lc.c_exact - lc.tail_exact, lc.c_exact + lc.tail_exact


@lru_cache(maxsize=None)
def k_constants(P: PrimeSet, b: int) -> KConstants:
    """Closed-form constants dominating A_k K2^(-k) and B_k uniformly in k.

    K1 = 6 * 2^(s+7/2) Q^(3/2) b^(4Q) prod sqrt(p) / ((sqrt(p)-1)(1-1/p))
    K2 = 2^s
    K3 = 2^(3/2) Q^(1/2) b^(2Q) prod sqrt(p) / (sqrt(p)-1)
    """
    P.require_coprime(b)
    s, Q = P.s, P.Q
    log_prod_half = 0.0
    log_prod_tot = 0.0
    for p in P:
        sp = math.sqrt(p)
        log_prod_half += math.log(sp / (sp - 1.0))
        log_prod_tot += math.log(1.0 / (1.0 - 1.0 / p))
    log_k1 = (
        math.log(6.0)
        + (s + 3.5) * LN2
        + 1.5 * math.log(Q)
        + 4.0 * Q * math.log(b)
        + log_prod_half
        + log_prod_tot
    )
    log_k3 = 1.5 * LN2 + 0.5 * math.log(Q) + 2.0 * Q * math.log(b) + log_prod_half
    return KConstants(
        k1=_exp_or_inf(log_k1),
        k2=float(2**s),
        k3=_exp_or_inf(log_k3),
        log_k1=log_k1 * (1.0 + 1e-14),
        log_k3=log_k3 * (1.0 + 1e-14),
    )


def _exp_or_inf(log_value: float) -> float:
    try:
        return round_up(math.exp(log_value))
    except OverflowError:
        return math.inf


def bound_eval(m: int, N: int, k: int, P: PrimeSet, b: int, form: str = "recursive") -> BoundReport:
    """Level-k bound on |S_N| for P-smooth m, in either constant regime.

    "recursive" uses the certified A_k, B_k; "main" substitutes the
    closed-form K1*K2^k and K3.  Exponents are identical in both forms, so
    main >= recursive always.
    """
    if N < 1:
        raise OutOfRange("N must be positive")
    factor_smooth(m, P)
    ex = exponents(k)
    log_m = math.log(m)
    log_n = math.log(N)
    log_pow_main = float(ex.alpha) * log_m + float(ex.gamma) * log_n
    log_pow_sec = -float(ex.alpha) * log_m + float(ex.nu) * log_n
    if form == "recursive":
        cs = constants(k, P, b)
        tm = round_up(cs.a_k * math.exp(log_pow_main))
        ts = round_up(cs.b_k * math.exp(log_pow_sec))
    elif form == "main":
        kc = k_constants(P, b)
        tm = _exp_or_inf(kc.log_k1 + k * math.log(kc.k2) + log_pow_main)
        ts = _exp_or_inf(kc.log_k3 + log_pow_sec)
    else:
        raise OutOfRange(f"unknown bound form {form!r}")
    logfac = round_up((1.0 + log_m) ** (2.0**-k))
    bound = (tm + ts) * logfac
    return BoundReport(m, N, k, bound, tm, ts, bound < N, form)


def bound_baseline(m: int, N: int, d: int, P: PrimeSet, b: int, form: str = "short") -> BoundReport:
    """Baseline bounds below the recursion.

    short: sqrt(m/d) * (1 + log(m/d)), valid for N <= ord(b, m) and d = 1
    or d < m/m1, where d = gcd(a, m).  The report's m field carries the
    reduced modulus m/d so the report invariant stays intact.
    long : (sqrt(m) + M N / sqrt(m)) * (1 + log m), valid for d = 1, any N.
    """
    if N < 1:
        raise OutOfRange("N must be positive")
    if d < 1 or m % d != 0:
        raise RangeViolation(f"d={d} must divide m={m}")
    struct = mult_order_structured(b, m, P)
    if form == "short":
        if N > struct.order:
            raise RangeViolation(f"short form needs N <= ord(b, m) = {struct.order}")
        if not (d == 1 or d * struct.m1 < m):
            raise RangeViolation(f"short form needs d=1 or d < m/m1 = {m}/{struct.m1}")
        md = m // d
        tm = round_up(math.sqrt(md))
        logfac = round_up(1.0 + math.log(md))
        bound = tm * logfac
        return BoundReport(md, N, 0, bound, tm, 0.0, bound < N, "short")
    if form == "long":
        if d != 1:
            raise RangeViolation("long form requires gcd(a, m) = 1")
        M = capital_m(P, b)
        tm = round_up(math.sqrt(m))
        ts = round_up(M * N / math.sqrt(m))
        logfac = round_up(1.0 + math.log(m))
        bound = (tm + ts) * logfac
        return BoundReport(m, N, 0, bound, tm, ts, bound < N, "long")
    raise OutOfRange(f"unknown baseline form {form!r}")


def bound_korobov_prime(p: int, alpha_exp: Union[int, float], N: int) -> float:
    """Comparator bound 3N exp(-g (log N)^3 / (log p^alpha)^2), g = 1/(2e6).

    Its own validity preconditions are not checkable from (p, alpha, N)
    alone, so callers must treat the value as advisory.
    """
    if p < 3 or p % 2 == 0:
        raise OutOfRange("p must be an odd prime")
    if N < 2:
        raise OutOfRange("N must be at least 2")
    log_pa = alpha_exp * math.log(p)
    return 3.0 * N * math.exp(-PRIME_POWER_GAMMA * math.log(N) ** 3 / log_pa**2)


def intervals(k: int) -> Tuple[RationalInterval, Optional[RationalInterval]]:
    """Non-trivial range I_k and (for k >= 1) the optimal range.

    I_k = [alpha/(1-gamma), alpha/(nu-1)] exactly (right end infinite when
    nu = 1).  The optimal range [1/(k+c+2), 1/(k+c+1)] is returned as its
    conservative outer hull over the certified enclosure of c; at level 0
    its right endpoint would be negative, so None is returned.
    """
    ex = exponents(k)
    lo = ex.alpha / (1 - ex.gamma)
    hi = None if ex.nu == 1 else ex.alpha / (ex.nu - 1)
    nontrivial = RationalInterval(lo, hi)
    if k == 0:
        return nontrivial, None
    c_lo, c_hi = certified_c()
    optimal = RationalInterval(1 / (k + 2 + c_hi), 1 / (k + 1 + c_lo))
    return nontrivial, optimal


def delta_of_subinterval(k: int, interval: RationalInterval) -> Fraction:
    """Exact decay exponent for a subinterval strictly inside I_k.

    At N = m^x: m^alpha N^(gamma-1) = m^(alpha - x(1-gamma)) peaks at the
    left end, m^(-alpha) N^(nu-1) peaks at the right end; delta is the
    smaller of the two margins.
    """
    ex = exponents(k)
    ambient, _ = intervals(k)
    if interval.lo <= ambient.lo:
        raise NotInterior(f"left endpoint {interval.lo} not interior to I_{k}")
    if ambient.hi is not None and (interval.hi is None or interval.hi >= ambient.hi):
        raise NotInterior(f"right endpoint {interval.hi} not interior to I_{k}")
    delta1 = (1 - ex.gamma) * interval.lo - ex.alpha
    if ex.nu == 1:
        delta2 = ex.alpha
    else:
        delta2 = ex.alpha - (ex.nu - 1) * interval.hi
    delta = min(delta1, delta2)
    if delta <= 0:
        raise NotInterior("subinterval admits no positive decay exponent")
    return delta


def best_k(m: int, N: int, P: PrimeSet, b: int, k_max: int) -> BestK:
    """argmin over levels 0..k_max of the recursive bound (ties to smaller k),
    alongside the prediction from optimal-range membership of log N / log m."""
    if k_max < 0:
        raise OutOfRange("k_max must be non-negative")
    winner = None
    for k in range(k_max + 1):
        rep = bound_eval(m, N, k, P, b, "recursive")
        if winner is None or rep.bound_value < winner.bound_value:
            winner = rep
    k_hat = None
    if m > 1:
        c_lo, c_hi = certified_c()
        c_mid = (c_lo + c_hi) / 2
        x = math.log(N) / math.log(m)
        for k in range(1, k_max + 1):
            if float(1 / (k + 2 + c_mid)) <= x <= float(1 / (k + 1 + c_mid)):
                k_hat = k
                break
    return BestK(winner.k, winner, k_hat)


def corollary_constants(epsilon: Union[Fraction, float], P: PrimeSet, b: int) -> CorollaryResult:
    """Uniform-decay constants for the exponent range [epsilon, 1].

    Picks the smallest level k with epsilon strictly inside I_k, partitions
    [epsilon, 1] into segments strictly inside I_1..I_k by midpoint cuts of
    consecutive overlaps, and takes delta as the worst segment margin.  The
    companion constant is C = 2 K1 K2^k K3.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 1), got {epsilon}")
    level = None
    for k in range(0, 200):
        ambient, _ = intervals(k)
        if ambient.contains(eps, strict=True):
            level = k
            break
    if level is None:
        raise EpsilonOutOfRange(f"no level admits {epsilon} strictly inside its range")
    if level == 0:
        segments = ((0, RationalInterval(eps, Fraction(1))),)
    else:
        cuts: dict = {1: Fraction(1), level + 1: eps}
        for i in range(2, level + 1):
            lo_prev = intervals(i - 1)[0].lo
            hi_here = intervals(i)[0].hi
            upper = cuts[i - 1] if hi_here is None else min(hi_here, cuts[i - 1])
            cuts[i] = (lo_prev + upper) / 2
        segments = tuple(
            (i, RationalInterval(cuts[i + 1], cuts[i])) for i in range(1, level + 1)
        )
    delta = min(delta_of_subinterval(i, seg) for i, seg in segments)
    kc = k_constants(P, b)
    log_big_c = math.log(2.0) + kc.log_k1 + level * math.log(kc.k2) + kc.log_k3
    big_c = _exp_or_inf(log_big_c)

    def threshold_n(m: Union[int, float]) -> float:
        """Smallest N of the guaranteed-decay regime at modulus m."""
        if m < 16:
            return math.inf
        log_m = math.log(m)
        loglog = math.log(log_m)
        denom = loglog / LN2 - 3.0 * math.log(loglog) / LN2
        if denom <= 0:
            return math.inf
        try:
            return math.exp(log_m / denom)
        except OverflowError:
            return math.inf

    def decay(m: Union[int, float]) -> float:
        """Advisory decay envelope exp(-coeff (log log m)^(3/2))."""
        if m < 3:
            return 1.0
        return math.exp(-DECAY_COEFF * math.log(math.log(m)) ** 1.5)

    return CorollaryResult(level, delta, big_c, log_big_c, segments, threshold_n, decay)
