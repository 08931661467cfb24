"""
cantor-bendixson structure of ordinal intervals [0, beta]

a point g > 0 survives alpha derivations exactly when the last exponent of
its normal form is at least alpha
"""
from distort_lab.models.interval_set import IntervalSet
from distort_lab.models.ordinal import (
    ONE,
    Ordinal,
    add,
    last_exponent,
    omega_pow,
    successor,
)
from distort_lab.utils.exceptions import DomainError


def in_derived_set(gamma: Ordinal, alpha: Ordinal, beta: Ordinal) -> bool:
    """membership of gamma in the alpha-th derived set of [0, beta]"""
    if gamma > beta:
        raise DomainError(f"{gamma} lies outside [0, {beta}]")
    if alpha.is_zero:
        return True
    if gamma.is_zero:
        return False
    return last_exponent(gamma) >= alpha


def cb_rank_interval(beta: Ordinal) -> Ordinal:
    """least alpha with an empty alpha-th derivative of [0, beta]"""
    if beta.is_finite:
        return ONE
    return successor(beta.leading_exponent)


def next_derived_point(gamma: Ordinal, alpha: Ordinal) -> Ordinal:
    """least delta > gamma whose last exponent is at least alpha"""
    if alpha.is_zero:
        return successor(gamma)
    high = tuple(t for t in gamma.terms if t[0] >= alpha)
    if len(high) == len(gamma.terms):
        # gamma is already a multiple of w^alpha
        return add(gamma, omega_pow(alpha))
    return add(Ordinal(high), omega_pow(alpha))


def count_derived_in(s: IntervalSet, alpha: Ordinal, cap: int) -> int:
    """min(cap, number of points of the alpha-th derived set inside s)"""
    if cap < 1:
        raise DomainError(f"cap must be positive, got {cap}")
    count = 1 if (s.include_zero and alpha.is_zero) else 0
    for left, right in s.pieces:
        point = next_derived_point(left, alpha)
        while count < cap and point <= right:
            count += 1
            point = next_derived_point(point, alpha)
        if count >= cap:
            break
    return min(count, cap)
