from fractions import Fraction
from math import lcm
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from distort_lab.utils.exceptions import UsageError

Rational = Union[int, Fraction]

# headroom so sums and differences of scaled entries stay inside int64
_INT64_SAFE = 2 ** 61


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """parse "p/q", "p" or a finite decimal into an exact fraction"""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def format_rational(value: Rational) -> str:
    """canonical text form, "p" for integers and "p/q" otherwise"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values: Iterable[Rational]) -> int:
    den = 1
    for v in values:
        den = lcm(den, Fraction(v).denominator)
    return den


def scale_to_integers(*tables: Sequence[Sequence[Rational]]) -> Tuple[List[np.ndarray], int]:
    """
    scale rational tables by one common denominator into integer arrays

    comparisons between the returned arrays are exact; object dtype is used
    when the scaled values would not fit comfortably in int64
    """
    den = common_denominator(v for table in tables for row in table for v in row)
    scaled = [[[int(Fraction(v) * den) for v in row] for row in table] for table in tables]
    peak = max((abs(v) for table in scaled for row in table for v in row), default=0)
    dtype = np.int64 if peak < _INT64_SAFE else object
    arrays = []
    for table in scaled:
        arr = np.array(table, dtype=dtype)
        if arr.ndim != 2:
            arr = arr.reshape(len(table), 0)
        arrays.append(arr)
    return arrays, den
