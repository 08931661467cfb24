"""
sup-norm geometry of step functions on ordinal intervals

every comparison happens on the common refinement of the cut lists; the value
at a cut is the value of the piece that cut closes
"""
import logging
from bisect import bisect_left
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sortedcontainers import SortedSet

from distort_lab.models.embedding import MatrixEmbedding, StepEmbedding
from distort_lab.models.interval_set import IntervalSet
from distort_lab.models.ordinal import ZERO, Ordinal
from distort_lab.models.results import WitnessReport
from distort_lab.models.step_function import StepFunction
from distort_lab.services.derived_sets import count_derived_in
from distort_lab.utils.exceptions import DomainError
from distort_lab.utils.rationals import scale_to_integers

logger = logging.getLogger(__name__)


def evaluate(f: StepFunction, gamma: Ordinal) -> Fraction:
    if gamma > f.bound:
        raise DomainError(f"{gamma} lies outside [0, {f.bound}]")
    return f.values[bisect_left(f.cuts, gamma)]


def common_cuts(functions: Sequence[StepFunction]) -> List[Ordinal]:
    """sorted union of all cut lists"""
    if not functions:
        return []
    bound = functions[0].bound
    for f in functions:
        if f.bound != bound:
            raise DomainError(f"mismatched bounds {bound} and {f.bound}")
    cuts = SortedSet()
    for f in functions:
        cuts.update(f.cuts)
    return list(cuts)


def values_on(f: StepFunction, cuts: Sequence[Ordinal]) -> List[Fraction]:
    """values of f on the pieces of a refinement of its own cut list"""
    out, j = [], 0
    for cut in cuts:
        while f.cuts[j] < cut:
            j += 1
        out.append(f.values[j])
    return out


def refinement_pieces(cuts: Sequence[Ordinal]) -> List[Tuple[Optional[Ordinal], Ordinal]]:
    """(left, right) per piece; left is None for the closed first piece [0, right]"""
    return [(cuts[i - 1] if i else None, cut) for i, cut in enumerate(cuts)]


def sup_distance(f: StepFunction, g: StepFunction) -> Fraction:
    cuts = common_cuts([f, g])
    return max(abs(a - b) for a, b in zip(values_on(f, cuts), values_on(g, cuts)))


def pieces_to_interval_set(bound: Ordinal, cuts: Sequence[Ordinal], keep: Sequence[bool]) -> IntervalSet:
    include_zero = False
    pieces = []
    for (left, right), selected in zip(refinement_pieces(cuts), keep):
        if not selected:
            continue
        if left is None:
            include_zero = True
            if not right.is_zero:
                pieces.append((ZERO, right))
        else:
            pieces.append((left, right))
    return IntervalSet.build(bound, pieces, include_zero)


def _check_D(D: Fraction):
    if not 1 <= D < 2:
        raise DomainError(f"D must satisfy 1 <= D < 2, got {D}")


def witness_region(f_a: StepFunction, f_b: StepFunction, D: Fraction) -> IntervalSet:
    """points where |f_a - f_b| >= 4 - 2D"""
    D = Fraction(D)
    _check_D(D)
    threshold = 4 - 2 * D
    cuts = common_cuts([f_a, f_b])
    keep = [abs(a - b) >= threshold for a, b in zip(values_on(f_a, cuts), values_on(f_b, cuts))]
    return pieces_to_interval_set(f_a.bound, cuts, keep)


def witness_report(
    e: StepEmbedding,
    pairs: Sequence[Tuple[str, str]],
    D: Fraction,
    alphas: Sequence[Ordinal],
    cap: int,
) -> WitnessReport:
    """intersection of the witness regions of all pairs, counted per derived set"""
    D = Fraction(D)
    _check_D(D)
    region = IntervalSet.full(e.bound)
    for a, b in pairs:
        for label in (a, b):
            if label not in e.domain.position:
                raise DomainError(f"{label!r} is not a point of the embedded space")
        region = region.intersect(witness_region(e.image(a), e.image(b), D))
    counts = tuple((alpha, count_derived_in(region, alpha, cap)) for alpha in alphas)
    return WitnessReport(D, 4 - 2 * D, tuple((a, b) for a, b in pairs), region, counts, cap)


def value_table(e: StepEmbedding) -> Tuple[List[Ordinal], List[List[Fraction]]]:
    """refinement cuts and the per-point value rows over them"""
    cuts = common_cuts(e.maps)
    return cuts, [values_on(f, cuts) for f in e.maps]


def pairwise_sup_distances(e: StepEmbedding) -> List[List[Fraction]]:
    _, rows = value_table(e)
    (table,), den = scale_to_integers(rows)
    out = []
    for i in range(len(rows)):
        scaled = np.abs(table - table[i]).max(axis=1)
        out.append([Fraction(int(v), den) for v in scaled])
    return out


def embedding_distortion(e: StepEmbedding) -> Tuple[Fraction, Fraction]:
    """tight (C1, C2) with C1 d(x,y) <= |f(x) - f(y)| <= C2 d(x,y)"""
    if e.domain.size < 2:
        raise DomainError("distortion needs at least two points")
    norms = pairwise_sup_distances(e)
    ratios = [norms[i][j] / e.domain.dist[i][j] for i, j in e.domain.pairs()]
    return min(ratios), max(ratios)


def first_non_isometric_pair(e: StepEmbedding) -> Optional[Tuple[str, str]]:
    """least pair (in point order) whose image distance differs from its distance"""
    norms = pairwise_sup_distances(e)
    for i, j in e.domain.pairs():
        if norms[i][j] != e.domain.dist[i][j]:
            return e.domain.labels[i], e.domain.labels[j]
    return None


def matrix_to_step(e: MatrixEmbedding) -> StepEmbedding:
    """coordinate j becomes the ordinal j of [0, n-1]"""
    n = e.dims
    if n == 0:
        raise DomainError("embedding has no coordinates")
    bound = Ordinal.nat(n - 1)
    cuts = [Ordinal.nat(j) for j in range(n)]
    maps = tuple(StepFunction.build(bound, cuts, row) for row in e.entries)
    zero_base = all(v == 0 for v in e.entries[e.domain.basepoint])
    return StepEmbedding(e.domain, bound, maps, normalized=zero_base)
