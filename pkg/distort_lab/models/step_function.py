from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from distort_lab.models.ordinal import Ordinal
from distort_lab.utils.exceptions import DomainError


@dataclass(frozen=True)
class StepFunction:
    """
    continuous function on [0, bound] constant on clopen pieces

    piece 0 is [0, cuts[0]] and piece j is (cuts[j-1], cuts[j]]; the last cut
    is the bound. adjacent pieces always carry different values
    """

    bound: Ordinal
    cuts: Tuple[Ordinal, ...]
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.cuts or len(self.cuts) != len(self.values):
            raise DomainError("a step function needs one value per cut")
        if self.cuts[-1] != self.bound:
            raise DomainError(f"last cut {self.cuts[-1]} must equal the bound {self.bound}")
        for left, right in zip(self.cuts, self.cuts[1:]):
            if not left < right:
                raise DomainError("cuts must be strictly ascending")

    @classmethod
    def build(cls, bound: Ordinal, cuts: Sequence[Ordinal], values: Sequence) -> "StepFunction":
        """canonical form: merge adjacent pieces with equal values"""
        merged_cuts: List[Ordinal] = []
        merged_values: List[Fraction] = []
        for cut, value in zip(cuts, values):
            value = Fraction(value)
            if merged_values and merged_values[-1] == value:
                merged_cuts[-1] = cut
            else:
                merged_cuts.append(cut)
                merged_values.append(value)
        return cls(bound, tuple(merged_cuts), tuple(merged_values))

    @classmethod
    def constant(cls, bound: Ordinal, value) -> "StepFunction":
        return cls(bound, (bound,), (Fraction(value),))

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    @property
    def sup_norm(self) -> Fraction:
        return max(abs(v) for v in self.values)
