"""Unit tests for digit extraction and pattern counting."""

import math
import random
from itertools import product

import pytest

from korosum import digits as dg
from korosum import numtheory as nt
from korosum.errors import NotCoprime, OutOfRange

P5 = nt.PrimeSet.of(5)


def long_division_digits(a, m, b, count):
    """Schoolbook long division, the independent oracle."""
    out = []
    r = a
    for _ in range(count):
        r *= b
        out.append(r // m)
        r %= m
    return out


def naive_count(a, m, pattern, N):
    """O(N k) window scanner over a materialized digit list."""
    k = len(pattern.digits)
    ds = long_division_digits(a, m, pattern.base, N + k - 1)
    return sum(1 for n in range(N) if tuple(ds[n : n + k]) == pattern.digits)


class TestDigitPattern:
    def test_validation(self):
        with pytest.raises(OutOfRange):
            dg.DigitPattern(10, ())
        with pytest.raises(OutOfRange):
            dg.DigitPattern(2, (2,))
        assert dg.DigitPattern.from_string("14", 10).digits == (1, 4)
        assert dg.DigitPattern(10, (1, 4)).value() == 14


class TestDigitAt:
    def test_one_third(self):
        for n in (1, 2, 17, 100):
            assert dg.digit_at(1, 3, 10, n) == 3

    def test_one_seventh(self):
        assert [dg.digit_at(1, 7, 10, n) for n in range(1, 7)] == [1, 4, 2, 8, 5, 7]

    def test_two_sevenths_cyclic_shift(self):
        assert [dg.digit_at(2, 7, 10, n) for n in range(1, 7)] == [2, 8, 5, 7, 1, 4]

    def test_matches_long_division(self):
        rng = random.Random(3)
        for _ in range(25):
            m = rng.choice([7, 49, 81, 121, 343, 625])
            b = rng.choice([2, 3, 10])
            if math.gcd(b, m) != 1:
                continue
            a = rng.randrange(1, m)
            want = long_division_digits(a, m, b, 40)
            got = [dg.digit_at(a, m, b, n) for n in range(1, 41)]
            assert got == want

    def test_periodicity(self):
        for a, m, b in ((1, 7, 10), (3, 125, 2), (5, 81, 10)):
            period = nt.mult_order(b, m)
            for n in range(1, 3 * period + 1):
                assert dg.digit_at(a, m, b, n) == dg.digit_at(a, m, b, n + period)

    def test_rejects_bad_inputs(self):
        with pytest.raises(OutOfRange):
            dg.digit_at(0, 7, 10, 1)
        with pytest.raises(OutOfRange):
            dg.digit_at(7, 7, 10, 1)
        with pytest.raises(NotCoprime):
            dg.digit_at(1, 10, 10, 1)


class TestCountOccurrences:
    def test_constant_expansion(self):
        rep = dg.count_occurrences(1, 3, dg.DigitPattern(10, (3,)), 100)
        assert rep.count == 100
        assert rep.expected == pytest.approx(10.0)

    def test_pattern_14_in_one_seventh(self):
        # expansion 142857 142857...: "14" starts once in positions 1..6;
        # position 6 would need digits (7, 1) = "71", not "14"
        rep = dg.count_occurrences(1, 7, dg.DigitPattern(10, (1, 4)), 6)
        assert rep.count == 1

    def test_match_may_extend_past_n(self):
        # "71" starts at position 6, read digit 7 beyond N = 6
        rep = dg.count_occurrences(1, 7, dg.DigitPattern(10, (7, 1)), 6)
        assert rep.count == 1

    def test_single_seven(self):
        assert dg.count_occurrences(1, 7, dg.DigitPattern(10, (7,)), 6).count == 1

    def test_against_naive_scanner(self):
        rng = random.Random(17)
        for _ in range(40):
            m = rng.choice([7, 31, 49, 81, 625, 2401])
            b = rng.choice([2, 3, 10])
            if math.gcd(b, m) != 1:
                continue
            a = rng.randrange(1, m)
            k = rng.randrange(1, 4)
            pattern = dg.DigitPattern(b, tuple(rng.randrange(b) for _ in range(k)))
            N = rng.randrange(1, 300)
            assert dg.count_occurrences(a, m, pattern, N).count == naive_count(a, m, pattern, N)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_every_position_starts_one_pattern(self, k):
        a, m, b, N = 3, 343, 10, 200
        total = sum(
            dg.count_occurrences(a, m, dg.DigitPattern(b, ds), N).count
            for ds in product(range(b), repeat=k)
        )
        assert total == N


class TestDeviationReport:
    def test_well_formed_when_expected_below_one(self):
        pattern = dg.DigitPattern(2, (1, 0, 1, 1, 0, 1, 0, 1))
        rep = dg.deviation_report(1, 5**4, pattern, 20, P5, 2)
        assert rep.occurrence.expected < 1
        assert rep.envelope > 0
        assert rep.ratio >= 0

    def test_full_period_exact_counts(self):
        m = 5**4
        N = nt.mult_order(2, m)
        zeros = dg.deviation_report(1, m, dg.DigitPattern(2, (0,)), N, P5, 2)
        ones = dg.deviation_report(1, m, dg.DigitPattern(2, (1,)), N, P5, 2)
        assert zeros.occurrence.count + ones.occurrence.count == N

    def test_base_mismatch_rejected(self):
        with pytest.raises(OutOfRange):
            dg.deviation_report(1, 25, dg.DigitPattern(2, (1,)), 10, P5, 10)

    def test_frequencies_match_counts(self):
        m, b, N = 5**4, 2, 500
        freq = dg.digit_frequencies(1, m, b, N)
        for d in range(b):
            assert freq[d] == dg.count_occurrences(1, m, dg.DigitPattern(b, (d,)), N).count
