"""
countable ordinals below epsilon_0 in cantor normal form

an ordinal is a tuple of (exponent, coefficient) terms with strictly
decreasing exponents; the empty tuple is 0. values are immutable and hashable
so they can key caches and live inside frozen dataclasses
"""
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import List, Optional, Tuple

from distort_lab.utils.exceptions import DomainError, UsageError


class Comparison(str, Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exponent, coefficient in self.terms:
            if not isinstance(coefficient, int) or coefficient < 1:
                raise DomainError(f"cnf coefficient must be a positive integer, got {coefficient!r}")
            if prev is not None and _cmp(exponent, prev) >= 0:
                raise DomainError("cnf exponents must be strictly decreasing")
            prev = exponent

    @classmethod
    def nat(cls, n: int) -> "Ordinal":
        if n < 0:
            raise DomainError(f"natural number expected, got {n}")
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        return parse_ordinal(text)

    def __lt__(self, other: "Ordinal") -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return _cmp(self, other) < 0

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return add(self, other)

    def __mul__(self, n: int) -> "Ordinal":
        return mul_nat(self, n)

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise DomainError("0 has no leading exponent")
        return self.terms[0][0]

    def as_int(self) -> int:
        """value of a finite ordinal"""
        if not self.is_finite:
            raise DomainError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def _cmp(a: Ordinal, b: Ordinal) -> int:
    # exponent-major lexicographic order on term lists
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


def compare(a: Ordinal, b: Ordinal) -> Comparison:
    c = _cmp(a, b)
    if c < 0:
        return Comparison.LT
    return Comparison.GT if c > 0 else Comparison.EQ


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """ordinal sum; terms of a below the leading exponent of b are absorbed"""
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    lead_exp, lead_coef = b.terms[0]
    kept: List[Tuple[Ordinal, int]] = []
    for exponent, coefficient in a.terms:
        c = _cmp(exponent, lead_exp)
        if c > 0:
            kept.append((exponent, coefficient))
        elif c == 0:
            kept.append((exponent, coefficient + lead_coef))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def mul_nat(a: Ordinal, n: int) -> Ordinal:
    """right multiplication a*n by a positive integer"""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"multiplier must be a positive integer, got {n!r}")
    if a.is_zero:
        return ZERO
    (exponent, coefficient), tail = a.terms[0], a.terms[1:]
    return Ordinal(((exponent, coefficient * n),) + tail)


def omega_pow(a: Ordinal) -> Ordinal:
    return Ordinal(((a, 1),))


def successor(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def predecessor(a: Ordinal) -> Ordinal:
    if not a.is_successor:
        raise DomainError(f"{a} is not a successor ordinal")
    coefficient = a.terms[-1][1]
    if coefficient == 1:
        return Ordinal(a.terms[:-1])
    return Ordinal(a.terms[:-1] + ((ZERO, coefficient - 1),))


def last_exponent(a: Ordinal) -> Ordinal:
    if a.is_zero:
        raise DomainError("0 has no last exponent")
    return a.terms[-1][0]


def fundamental_sequence(a: Ordinal, n: int) -> Ordinal:
    """
    n-th element a[n] of the canonical sequence converging to the limit a

    with a = g + w^e: a[n] = g + w^(e-1)*n for successor e, and
    a[n] = g + w^(e[n]) for limit e. indices start at 1
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"sequence index must be a positive integer, got {n!r}")
    if not a.is_limit:
        raise DomainError(f"{a} is not a limit ordinal")
    exponent, coefficient = a.terms[-1]
    head = a.terms[:-1] + (((exponent, coefficient - 1),) if coefficient > 1 else ())
    gamma = Ordinal(head)
    if exponent.is_successor:
        return add(gamma, mul_nat(omega_pow(predecessor(exponent)), n))
    return add(gamma, omega_pow(fundamental_sequence(exponent, n)))


# text form: w^{<ordinal>}*<nat> + ... ; "0" is zero

def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if exponent.is_zero:
            parts.append(str(coefficient))
            continue
        if exponent == ONE:
            base = "w"
        elif exponent.is_finite:
            base = f"w^{exponent.as_int()}"
        else:
            base = "w^{" + format_ordinal(exponent) + "}"
        parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
    return " + ".join(parts)


class _Parser:
    """recursive descent over the cnf text grammar"""

    def __init__(self, text: str):
        self.text = text.replace("ω", "w")
        self.pos = 0

    def fail(self, message: str):
        raise UsageError(f"bad ordinal {self.text!r} at {self.pos}: {message}")

    def peek(self) -> Optional[str]:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected a natural number")
        return int(self.text[start:self.pos])

    def ordinal(self) -> Ordinal:
        total = self.term()
        while self.peek() == "+":
            self.pos += 1
            total = add(total, self.term())
        return total

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch is None:
            self.fail("unexpected end of input")
        if ch.isdigit():
            return Ordinal.nat(self.nat())
        if ch != "w":
            self.fail(f"unexpected {ch!r}")
        self.pos += 1
        exponent = ONE
        if self.peek() == "^":
            self.pos += 1
            exponent = self.exponent()
        coefficient = 1
        if self.peek() == "*":
            self.pos += 1
            coefficient = self.nat()
        if coefficient == 0:
            return ZERO
        return mul_nat(omega_pow(exponent), coefficient)

    def exponent(self) -> Ordinal:
        ch = self.peek()
        if ch == "{":
            self.pos += 1
            inner = self.ordinal()
            self.take("}")
            return inner
        if ch == "w":
            self.pos += 1
            return OMEGA
        return Ordinal.nat(self.nat())

    def parse(self) -> Ordinal:
        result = self.ordinal()
        if self.peek() is not None:
            self.fail("trailing input")
        return result


def parse_ordinal(text: str) -> Ordinal:
    return _Parser(text).parse()
