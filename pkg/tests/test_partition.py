from fractions import Fraction

import pytest

from omnirate import AffineValue, AlphaInterval, DomainError, Partition, Segmented

AF = AffineValue.of


def interval(lo, hi, lower_open=None):
    lo, hi = Fraction(lo), Fraction(hi)
    if lower_open is None:
        lower_open = lo != 0
    return AlphaInterval(lo, hi, lower_open)


class TestPartition:
    def test_singletons_refine_everything(self):
        fine = Partition.singletons([1, 2, 3])
        assert fine.refines(Partition([[1, 2], [3]]))

    def test_incomparable(self):
        assert not Partition([[1, 2], [3]]).refines(Partition([[1, 3], [2]]))

    def test_chain_member_refines_top(self):
        assert Partition([[1, 2, 5], [3], [4]]).refines(Partition.whole([1, 2, 3, 4, 5]))

    def test_carrier_mismatch(self):
        with pytest.raises(DomainError):
            Partition([[1], [2]]).refines(Partition([[1], [2], [3]]))

    def test_merge_two_singletons(self):
        assert Partition([[1], [2]]).merge_blocks([1, 2]) == Partition([[1, 2]])

    def test_merge_existing_block_is_identity(self):
        p = Partition([[1, 2], [3]])
        assert p.merge_blocks([1, 2]) == p

    def test_merge_across_blocks(self):
        p = Partition([[1, 2], [3], [4], [5]])
        assert p.merge_blocks([1, 2, 5]) == Partition([[1, 2, 5], [3], [4]])

    def test_merge_refusing_to_split(self):
        with pytest.raises(DomainError):
            Partition([[1, 2], [3]]).merge_blocks([1, 3])

    def test_canonical_order_and_str(self):
        p = Partition([[4], [3], [5, 2, 1]])
        assert str(p) == "{{1,2,5},{3},{4}}"

    def test_rejects_overlap_and_empty(self):
        with pytest.raises(DomainError):
            Partition([[1, 2], [2, 3]])
        with pytest.raises(DomainError):
            Partition([[1], []])

    def test_block_of(self):
        p = Partition([[1, 2], [3]])
        assert p.block_of(2) == frozenset({1, 2})
        with pytest.raises(DomainError):
            p.block_of(9)


class TestAffineValue:
    def test_eval_and_arithmetic(self):
        r = AF(-2, 1)  # alpha - 2
        assert r.at(Fraction(13, 2)) == Fraction(9, 2)
        s = AF(14, -2)
        assert (r + s).at(3) == (r.at(3) + s.at(3))
        assert (r - s).slope == 3

    def test_componentwise_equality(self):
        assert AF(0, 1) != AF(0, 2)
        assert AF(1, 0) == AF(1, 0)


class TestAlphaInterval:
    def test_half_open_membership(self):
        iv = interval(4, 10)
        assert not iv.contains(Fraction(4))
        assert iv.contains(Fraction(401, 100))
        assert iv.contains(Fraction(10))

    def test_closed_bottom(self):
        iv = interval(0, 4)
        assert iv.contains(Fraction(0)) and iv.contains(Fraction(4))

    def test_degenerate_point(self):
        iv = AlphaInterval(Fraction(0), Fraction(0), False)
        assert iv.contains(Fraction(0))
        with pytest.raises(DomainError):
            AlphaInterval(Fraction(3), Fraction(3), True)
        with pytest.raises(DomainError):
            AlphaInterval(Fraction(2), Fraction(2), False)

    def test_reversed_bounds(self):
        with pytest.raises(DomainError):
            AlphaInterval(Fraction(5), Fraction(4), True)


def two_user_partition_segments():
    # The segmented partition the sweep produces for the first two users of
    # the golden source: singletons up to 4, then one block.
    return Segmented([
        (interval(0, 4), Partition([[1], [2]])),
        (interval(4, 10), Partition([[1, 2]])),
    ])


class TestSegmented:
    def test_value_at_closed_boundary(self):
        seg = two_user_partition_segments()
        assert seg.value_at(4) == Partition([[1], [2]])

    def test_value_just_above_boundary(self):
        seg = two_user_partition_segments()
        assert seg.value_at(Fraction(4) + Fraction(1, 1000)) == Partition([[1, 2]])

    def test_constant_everywhere(self):
        seg = Segmented.constant(Fraction(10), "x")
        for alpha in (0, 1, Fraction(19, 2), 10):
            assert seg.value_at(alpha) == "x"

    def test_out_of_range(self):
        seg = two_user_partition_segments()
        with pytest.raises(DomainError):
            seg.value_at(Fraction(21, 2))
        with pytest.raises(DomainError):
            seg.value_at(-1)

    def test_map_remerges_equal_values(self):
        seg = two_user_partition_segments()
        assert len(seg.map(len)) == 2           # 2 blocks vs 1 block
        assert len(seg.map(lambda p: p.carrier)) == 1

    def test_merge_on_construction(self):
        seg = Segmented([
            (interval(0, 4), "a"),
            (interval(4, 7), "a"),
            (interval(7, 10), "b"),
        ])
        assert len(seg) == 2
        assert seg.pieces[0][0] == interval(0, 7)

    def test_tiling_gaps_rejected(self):
        with pytest.raises(DomainError):
            Segmented([
                (interval(0, 4), "a"),
                (interval(5, 10), "b"),
            ])

    def test_must_start_at_zero(self):
        with pytest.raises(DomainError):
            Segmented([(interval(1, 10), "a")])

    def test_degenerate_first_piece(self):
        seg = Segmented([
            (AlphaInterval(Fraction(0), Fraction(0), False), "point"),
            (interval(0, 10, lower_open=True), "rest"),
        ])
        assert seg.value_at(0) == "point"
        assert seg.value_at(Fraction(1, 7)) == "rest"
        assert seg.upper_breakpoints() == (Fraction(0), Fraction(10))
