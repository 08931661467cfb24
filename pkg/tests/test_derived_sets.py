import pytest

from distort_lab.models.interval_set import IntervalSet
from distort_lab.models.ordinal import OMEGA, ONE, ZERO, Ordinal, mul_nat, omega_pow, parse_ordinal
from distort_lab.services.derived_sets import (
    cb_rank_interval,
    count_derived_in,
    in_derived_set,
    next_derived_point,
)
from distort_lab.utils.exceptions import DomainError


@pytest.mark.unit
@pytest.mark.ordinal
class TestDerivedSets:
    """test cantor-bendixson structure of [0, beta]"""

    def test_membership(self):
        assert in_derived_set(OMEGA, ONE, OMEGA)
        assert not in_derived_set(Ordinal.nat(3), ONE, OMEGA)
        assert in_derived_set(ZERO, ZERO, OMEGA)
        assert not in_derived_set(ZERO, ONE, OMEGA)

    def test_membership_outside_interval(self):
        with pytest.raises(DomainError):
            in_derived_set(mul_nat(OMEGA, 2), ONE, OMEGA)

    @pytest.mark.parametrize(
        "beta, rank",
        [("5", "1"), ("w", "2"), ("w^2*3", "3"), ("w^w + 7", "w + 1")],
    )
    def test_cb_rank(self, beta, rank):
        assert cb_rank_interval(parse_ordinal(beta)) == parse_ordinal(rank)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_cb_rank_of_powers(self, n):
        """test [0, w^a * n] has rank a + 1"""
        for alpha in (ZERO, ONE, OMEGA):
            beta = mul_nat(omega_pow(alpha), n)
            assert cb_rank_interval(beta) == alpha + ONE

    @pytest.mark.parametrize(
        "gamma, alpha, expected",
        [
            ("3", "1", "w"),
            ("w", "1", "w*2"),
            ("w + 2", "1", "w*2"),
            ("w", "0", "w + 1"),
            ("w^2 + w", "2", "w^2*2"),
            ("0", "2", "w^2"),
        ],
    )
    def test_next_point(self, gamma, alpha, expected):
        assert next_derived_point(parse_ordinal(gamma), parse_ordinal(alpha)) == parse_ordinal(expected)

    def test_count_limit_points(self):
        """test (0, w*2] holds the two limit points w and w*2"""
        s = IntervalSet.full(mul_nat(OMEGA, 2))
        assert count_derived_in(s, ONE, 64) == 2

    def test_count_is_capped(self):
        assert count_derived_in(IntervalSet.full(OMEGA), ZERO, 64) == 64

    def test_count_in_piece(self):
        bound = mul_nat(OMEGA, 2)
        s = IntervalSet.build(bound, [(OMEGA, bound)])
        assert count_derived_in(s, ONE, 10) == 1
        assert count_derived_in(s, ZERO, 10) == 10

    def test_count_needs_positive_cap(self):
        with pytest.raises(DomainError):
            count_derived_in(IntervalSet.full(OMEGA), ONE, 0)


@pytest.mark.unit
@pytest.mark.ordinal
class TestIntervalSet:
    """test clopen subsets of [0, bound]"""

    def test_build_merges_touching_pieces(self):
        bound = mul_nat(OMEGA, 3)
        s = IntervalSet.build(bound, [(OMEGA, mul_nat(OMEGA, 2)), (ZERO, OMEGA)])
        assert s.pieces == ((ZERO, mul_nat(OMEGA, 2)),)

    def test_contains(self):
        s = IntervalSet.build(mul_nat(OMEGA, 2), [(OMEGA, mul_nat(OMEGA, 2))], include_zero=True)
        assert s.contains(ZERO)
        assert not s.contains(OMEGA)
        assert s.contains(OMEGA + ONE)

    def test_intersect_and_subset(self):
        bound = mul_nat(OMEGA, 2)
        a = IntervalSet.full(bound)
        b = IntervalSet.build(bound, [(Ordinal.nat(3), OMEGA)])
        assert a.intersect(b) == b
        assert b.issubset(a)
        assert not a.issubset(b)

    def test_union(self):
        bound = mul_nat(OMEGA, 2)
        a = IntervalSet.build(bound, [(ZERO, OMEGA)])
        b = IntervalSet.build(bound, [(OMEGA, bound)])
        assert a.union(b).pieces == ((ZERO, bound),)

    def test_str(self):
        s = IntervalSet.build(OMEGA, [(ZERO, OMEGA)], include_zero=True)
        assert str(s) == "{0} u (0, w]"
        assert str(IntervalSet.empty(OMEGA)) == "{}"

    def test_piece_beyond_bound_rejected(self):
        with pytest.raises(DomainError):
            IntervalSet(OMEGA, ((ZERO, mul_nat(OMEGA, 2)),))
