import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from distort_lab.models.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Comparison,
    Ordinal,
    add,
    compare,
    fundamental_sequence,
    last_exponent,
    mul_nat,
    omega_pow,
    parse_ordinal,
    predecessor,
    successor,
)
from distort_lab.utils.exceptions import DomainError, UsageError


@st.composite
def ordinals(draw, depth=2):
    """cnf ordinals below w^(w^w) with small coefficients"""
    if depth == 0 or draw(st.booleans()):
        return Ordinal.nat(draw(st.integers(0, 5)))
    exponents = draw(st.sets(ordinals(depth=depth - 1), min_size=1, max_size=3))
    terms = tuple((e, draw(st.integers(1, 3))) for e in sorted(exponents, reverse=True))
    return Ordinal(terms)


@pytest.mark.unit
@pytest.mark.ordinal
class TestNormalForm:
    """test parsing, printing and normal form invariants"""

    def test_parse_and_format(self):
        """test text form survives a parse"""
        assert str(parse_ordinal("w^2*3 + w + 4")) == "w^2*3 + w + 4"
        assert str(parse_ordinal("w^{w + 1}")) == "w^{w + 1}"
        assert parse_ordinal("ω") == OMEGA

    def test_parse_normalizes_sums(self):
        """test absorbed terms disappear"""
        assert str(parse_ordinal("3 + w")) == "w"
        assert str(parse_ordinal("w + w")) == "w*2"
        assert parse_ordinal("0") == ZERO

    def test_parse_rejects_garbage(self):
        """test malformed text is a usage error"""
        with pytest.raises(UsageError):
            parse_ordinal("w^")
        with pytest.raises(UsageError):
            parse_ordinal("abc")

    def test_increasing_exponents_rejected(self):
        with pytest.raises(DomainError):
            Ordinal(((ONE, 1), (OMEGA, 1)))

    def test_classification(self):
        assert OMEGA.is_limit and not OMEGA.is_successor
        assert successor(OMEGA).is_successor
        assert Ordinal.nat(7).is_finite and Ordinal.nat(7).as_int() == 7
        assert not ZERO.is_limit and not ZERO.is_successor


@pytest.mark.unit
@pytest.mark.ordinal
class TestArithmetic:
    """test sums, products and fundamental sequences"""

    def test_left_terms_absorbed(self):
        assert add(Ordinal.nat(1), OMEGA) == OMEGA
        assert str(add(OMEGA, ONE)) == "w + 1"

    def test_mul_nat(self):
        assert str(mul_nat(successor(OMEGA), 2)) == "w*2 + 1"
        with pytest.raises(DomainError):
            mul_nat(OMEGA, 0)

    def test_predecessor(self):
        assert predecessor(Ordinal.nat(3)) == Ordinal.nat(2)
        assert predecessor(successor(OMEGA)) == OMEGA
        with pytest.raises(DomainError):
            predecessor(OMEGA)

    def test_last_exponent(self):
        assert last_exponent(parse_ordinal("w^2 + w*3")) == ONE
        assert last_exponent(parse_ordinal("w^w + 2")) == ZERO
        assert last_exponent(parse_ordinal("w^{w + 1}")) == successor(OMEGA)
        with pytest.raises(DomainError):
            last_exponent(ZERO)

    @pytest.mark.parametrize(
        "alpha, n, expected",
        [
            ("w", 3, "3"),
            ("w^2", 2, "w*2"),
            ("w^w", 2, "w^2"),
            ("w*2", 1, "w + 1"),
            ("w^2 + w", 4, "w^2 + 4"),
        ],
    )
    def test_fundamental_sequence(self, alpha, n, expected):
        """test canonical sequence elements"""
        assert str(fundamental_sequence(parse_ordinal(alpha), n)) == expected

    def test_fundamental_sequence_needs_limit(self):
        with pytest.raises(DomainError):
            fundamental_sequence(Ordinal.nat(4), 1)
        with pytest.raises(DomainError):
            fundamental_sequence(OMEGA, 0)

    def test_compare(self):
        assert compare(OMEGA, Ordinal.nat(100)) == Comparison.GT
        assert compare(omega_pow(OMEGA), omega_pow(OMEGA)) == Comparison.EQ
        assert compare(Ordinal.nat(2), OMEGA) == Comparison.LT


@pytest.mark.ordinal
class TestOrdinalProperties:
    """randomized algebraic laws"""

    @hyp_settings(max_examples=200, deadline=None)
    @given(ordinals(), ordinals(), ordinals())
    def test_addition_associative(self, a, b, c):
        assert add(add(a, b), c) == add(a, add(b, c))

    @hyp_settings(max_examples=200, deadline=None)
    @given(ordinals(), ordinals())
    def test_order_total(self, a, b):
        assert sum([a < b, a == b, b < a]) == 1
        assert (compare(a, b) == Comparison.LT) == (a < b)

    @hyp_settings(max_examples=200, deadline=None)
    @given(ordinals(), ordinals())
    def test_sum_bounds(self, a, b):
        """test both summands lie below their sum"""
        s = add(a, b)
        assert a <= s and b <= s

    @hyp_settings(max_examples=200, deadline=None)
    @given(ordinals())
    def test_text_round_trip(self, a):
        assert parse_ordinal(str(a)) == a

    @hyp_settings(max_examples=100, deadline=None)
    @given(ordinals())
    def test_fundamental_sequence_increases(self, a):
        if not a.is_limit:
            return
        seq = [fundamental_sequence(a, n) for n in range(1, 5)]
        assert all(x < y for x, y in zip(seq, seq[1:]))
        assert all(x < a for x in seq)
