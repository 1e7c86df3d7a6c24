import random
from fractions import Fraction

import pytest

from omnirate import (BitPoolSource, CapacityError, DomainError, Partition,
                      brute_dilworth, brute_min_sum_rate, check_achievable,
                      dilworth_truncation, partitions_of)

from conftest import random_alpha, random_bitpool

BELL = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203, 7: 877, 8: 4140}


class TestPartitionEnumeration:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_counts_match_bell_numbers(self, n):
        seen = list(partitions_of(range(1, n + 1)))
        assert len(seen) == BELL[n]
        assert len(set(seen)) == BELL[n]

    def test_capacity_cap(self):
        with pytest.raises(CapacityError):
            list(partitions_of(range(1, 10)))


class TestBruteMinSumRate:
    def test_golden_source(self, five_user):
        value, finest = brute_min_sum_rate(five_user)
        assert value == Fraction(13, 2)
        assert finest == Partition([[1, 2, 5], [3], [4]])

    def test_two_user_prefix(self, five_user):
        # Only one multi-block partition exists for two users.
        value, finest = brute_min_sum_rate(five_user, [1, 2])
        h = five_user.entropy([1, 2])
        expected = (h - five_user.entropy([1])) + (h - five_user.entropy([2]))
        assert value == expected == 2
        assert finest == Partition([[1], [2]])

    def test_three_users_each_missing_one_bit(self):
        model = BitPoolSource(["ab", "bc", "ca"])
        value, finest = brute_min_sum_rate(model)
        assert value == Fraction(3, 2)
        assert finest == Partition.singletons([1, 2, 3])

    def test_three_users_sharing_one_bit(self):
        # Everybody already knows everything: no exchange needed.
        model = BitPoolSource(["w", "w", "w"])
        value, _ = brute_min_sum_rate(model)
        assert value == 0

    def test_singleton_carrier_rejected(self, five_user):
        with pytest.raises(DomainError):
            brute_min_sum_rate(five_user, [3])


class TestBruteDilworth:
    def test_mid_segment_value(self, five_user):
        value, finest = brute_dilworth(five_user, 5)
        assert value == 1
        assert finest == Partition([[1, 2], [3], [4], [5]])

    def test_top_alpha(self, five_user):
        value, finest = brute_dilworth(five_user, 10)
        assert value == 10
        assert finest == Partition.whole(five_user.users)

    def test_matches_saturation(self):
        rng = random.Random(808)
        for _ in range(20):
            model = random_bitpool(rng, max_users=5, max_bits=9)
            alpha = random_alpha(rng, model)
            value, _ = brute_dilworth(model, alpha)
            assert value == dilworth_truncation(model, alpha)


class TestCheckAchievable:
    def test_optimal_vector(self, five_user):
        rates = (Fraction(9, 2), 0, Fraction(1, 2), Fraction(1, 2), 1)
        assert check_achievable(five_user, rates)

    def test_zero_vector(self, five_user):
        assert not check_achievable(five_user, [0, 0, 0, 0, 0])

    def test_below_minimum_sum_always_fails(self, five_user):
        eps = Fraction(1, 10)
        rates = [Fraction(9, 2) - eps, 0, Fraction(1, 2), Fraction(1, 2), 1]
        assert not check_achievable(five_user, rates)
        # any vector summing below the minimum sum-rate must fail
        rng = random.Random(3)
        for _ in range(20):
            cut = [Fraction(rng.randrange(0, 50), 10) for _ in range(5)]
            total = sum(cut)
            if total >= Fraction(13, 2):
                scale = Fraction(63, 10) / total if total else 0
                cut = [c * scale for c in cut]
            assert not check_achievable(five_user, cut)

    def test_slack_added_stays_achievable(self, five_user):
        rates = [Fraction(9, 2) + 1, 0, Fraction(1, 2), Fraction(1, 2), 1]
        assert check_achievable(five_user, rates)
