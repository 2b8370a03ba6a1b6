"""Normal-number candidates alpha = sum_k 1/(c_k b^(m_k)) and their diagnostics.

The ancillary sequence x_n tracks the fractional parts {b^n alpha} exactly:
zero before the first block, then a_k b^j / c_k within block k, with the
block numerators a_k advanced by one exact congruence per block.  Star
discrepancy of the resulting point sets is the quantity whose decay the
construction is about.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import OutOfRange, OutOfUnitInterval, ScheduleViolation
from .numtheory import PrimeSet, factor_smooth
from .sumeval import eval_sum

#: Explicit constant adopted for the discrepancy-from-exponential-sums
#: inequality; 3 is a classical admissible choice.
ERDOS_TURAN_CONSTANT = 3.0


@dataclass(frozen=True)
class Schedule:
    """Generators (c_k, m_k), k >= 1, together with the prime environment.

    Hypotheses: c_k strictly increasing, P-smooth, c_k | c_{k+1}; m_k
    strictly increasing; gcd(b, p) = 1 for each prime.  epsilon is the
    slack used by the advisory ratio check in validate_schedule.
    """

    b: int
    primes: PrimeSet
    c_fn: Callable[[int], int]
    m_fn: Callable[[int], int]
    epsilon: float = 0.1
    label: str = ""

    @classmethod
    def geometric(
        cls,
        b: int,
        c_base: int,
        m_base: int,
        primes: Optional[PrimeSet] = None,
        epsilon: float = 0.1,
    ) -> "Schedule":
        """c_k = c_base^k, m_k = m_base^k (the Stoneham-style shape)."""
        if primes is None:
            from .numtheory import factorize

            primes = PrimeSet(tuple(sorted(factorize(c_base))))
        return cls(
            b=b,
            primes=primes,
            c_fn=lambda k: c_base**k,
            m_fn=lambda k: m_base**k,
            epsilon=epsilon,
            label=f"geometric(c={c_base}^k, m={m_base}^k)",
        )

    @classmethod
    def explicit(
        cls,
        b: int,
        c_values: Sequence[int],
        m_values: Sequence[int],
        primes: PrimeSet,
        epsilon: float = 0.1,
    ) -> "Schedule":
        c_tuple = tuple(c_values)
        m_tuple = tuple(m_values)

        def pick(values: Tuple[int, ...], k: int) -> int:
            if not 1 <= k <= len(values):
                raise ScheduleViolation("schedule exhausted", k)
            return values[k - 1]

        return cls(
            b=b,
            primes=primes,
            c_fn=lambda k: pick(c_tuple, k),
            m_fn=lambda k: pick(m_tuple, k),
            epsilon=epsilon,
            label="explicit",
        )


@dataclass
class AncillaryState:
    """Block-k state: x_{m_k + j} = (a_k b^j mod c_k) / c_k."""

    k: int
    a_k: int
    position: int
    value: Fraction


@dataclass
class ScheduleValidation:
    """Structural checks plus the advisory hypothesis-ratio trend."""

    horizon: int
    ratios: List[Tuple[int, float]]
    ratio_decreasing: bool
    notes: List[str] = field(default_factory=list)


@dataclass
class TraceResult:
    """Star discrepancy at geometric checkpoints, with trend statistics."""

    rows: List[Tuple[int, float]]
    final_d_star: float
    decreasing_fraction: float
    overall_decreasing: bool


def validate_schedule(schedule: Schedule, K: int) -> ScheduleValidation:
    """Check every structural hypothesis for k <= K; raise on the first break.

    The limit hypothesis exp((1+eps) log c_k / log log c_k) / mu_k -> 0 is
    only observable as a finite trend, so its ratios are reported rather
    than enforced.
    """
    if K < 2:
        raise OutOfRange("horizon must be at least 2")
    for p in schedule.primes:
        if gcd(schedule.b, p) != 1:
            raise ScheduleViolation("gcd(b, p) = 1", 0)
    ratios: List[Tuple[int, float]] = []
    notes: List[str] = []
    prev_c, prev_m = None, None
    for k in range(1, K + 1):
        c_k, m_k = schedule.c_fn(k), schedule.m_fn(k)
        if c_k < 1 or m_k < 1:
            raise ScheduleViolation("positive schedule values", k)
        try:
            factor_smooth(c_k, schedule.primes)
        except Exception:
            raise ScheduleViolation("c_k P-smooth", k) from None
        if prev_c is not None:
            if c_k <= prev_c:
                raise ScheduleViolation("c_k strictly increasing", k)
            if c_k % prev_c != 0:
                raise ScheduleViolation("c_{k-1} | c_k", k)
            if m_k <= prev_m:
                raise ScheduleViolation("m_k strictly increasing", k)
        mu_k = m_k - (prev_m if prev_m is not None else 0)
        if c_k >= 3:
            log_c = math.log(c_k)
            ratios.append(
                (k, math.exp((1.0 + schedule.epsilon) * log_c / math.log(log_c)) / mu_k)
            )
        else:
            notes.append(f"k={k}: c_k={c_k} too small for the ratio hypothesis")
        prev_c, prev_m = c_k, m_k
    # demand both an overall drop and a majority of decreasing steps: the
    # first ratios can be degenerate artifacts of tiny c_k
    downs = sum(1 for (_, r0), (_, r1) in zip(ratios, ratios[1:]) if r1 < r0)
    steps = max(len(ratios) - 1, 1)
    decreasing = (
        len(ratios) >= 2 and ratios[-1][1] < ratios[0][1] and downs / steps > 0.5
    )
    if not decreasing:
        notes.append("hypothesis ratio not decreasing over the checked horizon")
    return ScheduleValidation(K, ratios, decreasing, notes)


def ancillary_states(schedule: Schedule, N: int) -> Iterator[AncillaryState]:
    """Exact states x_0 .. x_N; x_n = 0 before the first block, then
    a_k = (b^{mu_k} a_{k-1} (c_k / c_{k-1}) + 1) mod c_k at each boundary."""
    if N < 0:
        raise OutOfRange("N must be non-negative")
    b = schedule.b
    m1 = schedule.m_fn(1)
    n = 0
    while n < m1 and n <= N:
        yield AncillaryState(0, 0, n, Fraction(0))
        n += 1
    a_prev, c_prev, m_prev = 0, 1, 0
    k = 1
    while n <= N:
        c_k, m_k = schedule.c_fn(k), schedule.m_fn(k)
        if c_k <= c_prev and k > 1:
            raise ScheduleViolation("c_k strictly increasing", k)
        if c_k % c_prev != 0:
            raise ScheduleViolation("c_{k-1} | c_k", k)
        if m_k <= m_prev and k > 1:
            raise ScheduleViolation("m_k strictly increasing", k)
        mu_k = m_k - m_prev
        a_k = (pow(b, mu_k, c_k) * a_prev * (c_k // c_prev) + 1) % c_k
        try:
            block_end = schedule.m_fn(k + 1)
        except ScheduleViolation:
            block_end = None  # finite explicit schedule: last block extends
        r = a_k
        yield AncillaryState(k, a_k, n, Fraction(r, c_k))
        n += 1
        j = m_k + 1
        while (block_end is None or j < block_end) and n <= N:
            r = r * b % c_k
            yield AncillaryState(k, a_k, n, Fraction(r, c_k))
            n += 1
            j += 1
        a_prev, c_prev, m_prev = a_k, c_k, m_k
        k += 1


def ancillary_sequence(schedule: Schedule, N: int) -> Iterator[Fraction]:
    """The exact rationals x_0 .. x_N."""
    for state in ancillary_states(schedule, N):
        yield state.value


def star_discrepancy(points: Union[Sequence[float], np.ndarray]) -> float:
    """D*_N by the sorted-order formula.

    For sorted x_(1) <= ... <= x_(N):
    D* = max_i max(i/N - x_(i), x_(i) - (i-1)/N), exact to float precision.
    The two-sided discrepancy D satisfies D* <= D <= 2 D*.
    """
    xs = np.sort(np.asarray(points, dtype=np.float64))
    n = xs.size
    if n == 0:
        raise OutOfRange("need at least one point")
    if xs[0] < 0.0 or xs[-1] >= 1.0:
        raise OutOfUnitInterval("points must lie in [0, 1)")
    up = np.arange(1, n + 1, dtype=np.float64) / n - xs
    down = xs - np.arange(0, n, dtype=np.float64) / n
    return float(max(np.max(up), np.max(down)))


def erdos_turan_estimate(a: int, c_modulus: int, b: int, J: int, M: int) -> float:
    """Discrepancy majorant 3 (1/M + sum_{h<=M} |S_J(h a, b, c)| / (h J))
    for the points {a b^j / c}, j < J."""
    if M < 1 or J < 1:
        raise OutOfRange("J and M must be positive")
    total = 1.0 / M
    for h in range(1, M + 1):
        mag = eval_sum(h * a, b, c_modulus, J).magnitude
        total += mag / (h * J)
    return ERDOS_TURAN_CONSTANT * total


def discrepancy_trace(
    schedule: Schedule,
    n_max: int,
    checkpoints: Optional[Sequence[int]] = None,
) -> TraceResult:
    """D*_N at geometric checkpoints N = 2^j <= n_max over x_0 .. x_{N-1}."""
    if n_max < 1:
        raise OutOfRange("n_max must be positive")
    if checkpoints is None:
        checkpoints = [1 << j for j in range(0, n_max.bit_length()) if (1 << j) <= n_max]
    else:
        checkpoints = sorted(set(int(c) for c in checkpoints))
        if not checkpoints or checkpoints[0] < 1 or checkpoints[-1] > n_max:
            raise OutOfRange("checkpoints must lie in [1, n_max]")
    pts = np.empty(n_max, dtype=np.float64)
    for i, value in enumerate(ancillary_sequence(schedule, n_max - 1)):
        pts[i] = value.numerator / value.denominator
    rows = [(N, star_discrepancy(pts[:N])) for N in checkpoints]
    downs = sum(1 for (_, d0), (_, d1) in zip(rows, rows[1:]) if d1 < d0)
    steps = max(len(rows) - 1, 1)
    return TraceResult(
        rows=rows,
        final_d_star=rows[-1][1],
        decreasing_fraction=downs / steps,
        overall_decreasing=len(rows) >= 2 and rows[-1][1] < rows[0][1],
    )


def alpha_digits(schedule: Schedule, n_digits: int) -> List[int]:
    """First base-b digits of the truncated series sum_{k<=K} 1/(c_k b^(m_k)).

    K is chosen so the dropped tail is below b^-(n_digits+2): consecutive
    terms shrink at least geometrically (c_{k+1} >= 2 c_k, m_k increasing),
    so the tail is under twice the first dropped term.
    """
    if n_digits < 1:
        raise OutOfRange("n_digits must be positive")
    b = schedule.b
    K = 1
    while schedule.m_fn(K + 1) < n_digits + 3:
        K += 1
    value = Fraction(0)
    for k in range(1, K + 1):
        value += Fraction(1, schedule.c_fn(k) * b ** schedule.m_fn(k))
    digits = []
    for _ in range(n_digits):
        value *= b
        d = value.numerator // value.denominator
        digits.append(d)
        value -= d
    return digits
