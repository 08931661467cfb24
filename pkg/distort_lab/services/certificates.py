"""
finite counting certificates for distortion below 2

in a D-embedding (D < 2) of a 3-level graph, every pair a != b of one extra
level is told apart by (4 - 2D) on a coordinate where some f(A) - f(B)
attains its norm; these coordinates carry a (4 - 2D)-separated family inside
[-D, D]^n, whose capacity is k^n with k = floor(D / (2 - D)) + 1
"""
import itertools
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Union

import networkx as nx

from distort_lab.models.embedding import MatrixEmbedding, StepEmbedding
from distort_lab.models.metric_space import BASEPOINT, MetricSpace
from distort_lab.models.ordinal import Ordinal
from distort_lab.models.results import ByproductParams, Certificate, CountingReport
from distort_lab.services import spaces
from distort_lab.services.stepfn import (
    common_cuts,
    embedding_distortion,
    evaluate,
    matrix_to_step,
    pieces_to_interval_set,
    values_on,
    witness_region,
)
from distort_lab.utils.exceptions import DistortionExceededError, DomainError, NormalizationError

logger = logging.getLogger(__name__)

# 2 + k above this is reported as an exponent only
MAX_EXPLICIT_EXPONENT = 64

# largest ball handed to the clique search of packing_lower_bound
BALL_CAP = 32


def _check_D(D) -> Fraction:
    D = Fraction(D)
    if not 1 <= D < 2:
        raise DomainError(f"D must satisfy 1 <= D < 2, got {D}")
    return D


def base(D) -> int:
    """k = floor(D / (2 - D)) + 1"""
    D = _check_D(D)
    return int(D / (2 - D)) + 1


def c_d(D) -> float:
    return 1 / math.log(base(D))


def analytic_min_coords(D, m: int) -> int:
    """least n with base(D)^n >= m"""
    k = base(D)
    if m < 2:
        raise DomainError(f"need at least 2 points, got {m}")
    n, capacity = 1, k
    while capacity < m:
        n += 1
        capacity *= k
    return n


def max_separated(D, n: int) -> int:
    if n < 1:
        raise DomainError(f"dimension must be positive, got {n}")
    return base(D) ** n


def packing_number(D, n: int, refine: int = 2) -> int:
    """
    largest (4 - 2D)-separated subset of [-D, D]^n among grid points, by clique search

    the grid step divides both the separation and the side 2D, so the
    product of the one-dimensional optima lies on the grid
    """
    D = _check_D(D)
    if n < 1:
        raise DomainError(f"dimension must be positive, got {n}")
    sep = 4 - 2 * D
    ratio = 2 * D / sep
    step = sep / (ratio.denominator * refine)
    per_axis = int(2 * D / step) + 1
    axis = [-D + i * step for i in range(per_axis)]
    points = list(itertools.product(axis, repeat=n))
    graph = nx.Graph()
    graph.add_nodes_from(range(len(points)))
    for i, j in itertools.combinations(range(len(points)), 2):
        if max(abs(a - b) for a, b in zip(points[i], points[j])) >= sep:
            graph.add_edge(i, j)
    clique, _ = nx.max_weight_clique(graph, weight=None)
    return len(clique)


def byproduct_params(D, m: int) -> ByproductParams:
    """least k with C_D ln k > m, i.e. k = base^m + 1, and n = 2^(2+k)"""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    D = _check_D(D)
    k = base(D) ** m + 1
    exponent = 2 + k
    n = 2 ** exponent if exponent <= MAX_EXPLICIT_EXPONENT else None
    return ByproductParams(D, m, k, exponent, n)


def certificate(D, m: int) -> Certificate:
    D = _check_D(D)
    n_min = analytic_min_coords(D, m)
    capacity = tuple((n, max_separated(D, n)) for n in range(1, n_min + 1))
    return Certificate(D, m, base(D), c_d(D), n_min, capacity)


def _bound_for_level(size: int, n: int) -> Fraction:
    """least D compatible with a separated family of the given size in n coordinates"""
    k = 2
    while k ** n < size:
        k += 1
    return Fraction(2 * (k - 1), k)


def _cells_needed(size: int, n: int) -> int:
    """least k with k^n >= size"""
    k = 1
    while k ** n < size:
        k += 1
    return k


def packing_lower_bound(m: MetricSpace, n: int) -> Fraction:
    """
    lower bound on the distortion of any map of m into l_inf^n

    with C1 = 1 the points within r of a center land in a cube of side 2Dr,
    which holds at most (floor(2Dr/s) + 1)^n images at mutual distance >= s.
    every ball and separation is tried, largest separated family by clique
    search; balls above BALL_CAP points are skipped
    """
    if n < 1:
        raise DomainError(f"dimension must be positive, got {n}")
    best = Fraction(1)
    for c in range(m.size):
        row = m.dist[c]
        for r in sorted({v for v in row if v > 0}):
            ball = [y for y in range(m.size) if row[y] <= r]
            if len(ball) > BALL_CAP:
                break
            seps = sorted({m.dist[x][y] for x, y in itertools.combinations(ball, 2)}, reverse=True)
            for s in seps:
                if (_cells_needed(len(ball), n) - 1) * s / (2 * r) <= best:
                    continue
                graph = nx.Graph()
                graph.add_nodes_from(ball)
                graph.add_edges_from((x, y) for x, y in itertools.combinations(ball, 2) if m.dist[x][y] >= s)
                clique, _ = nx.max_weight_clique(graph, weight=None)
                best = max(best, (_cells_needed(len(clique), n) - 1) * s / (2 * r))
    logger.debug("packing bound", extra={"points": m.size, "dims": n, "bound": str(best)})
    return best


def counting_lower_bound(m: MetricSpace, n: int) -> Optional[Fraction]:
    """
    lower bound on the distortion of m into l_inf^n, or None when m is not a
    graph space whose extra levels all have at least 2 points
    """
    try:
        _, extra, _ = spaces.graph_levels(m)
    except DomainError:
        return None
    if not extra or any(len(level) < 2 for level in extra):
        return None
    return max(_bound_for_level(len(level), n) for level in extra)


def counting_consistent(m: MetricSpace, n: int, D) -> bool:
    """an achieved distortion D < 2 in n coordinates must leave room for every extra level"""
    D = Fraction(D)
    if D >= 2:
        return True
    try:
        _, extra, _ = spaces.graph_levels(m)
    except DomainError:
        return True
    return all(analytic_min_coords(D, len(level)) <= n for level in extra if len(level) >= 2)


def _attaining_region(f_a, f_b, bound: Ordinal):
    cuts = common_cuts([f_a, f_b])
    gaps = [abs(x - y) for x, y in zip(values_on(f_a, cuts), values_on(f_b, cuts))]
    top = max(gaps)
    keep = [g == top for g in gaps]
    first = cuts[keep.index(True)]
    return pieces_to_interval_set(bound, cuts, keep), first


def verify_witness_counting(e: Union[MatrixEmbedding, StepEmbedding], D) -> CountingReport:
    """
    check the counting argument on a concrete normalized embedding of a graph space

    normalization and distortion are checked first; the report then holds
    whether norm-attaining coordinates fall in the predicted witness regions,
    whether one witness per pair of the last level gives a separated family,
    and whether that family needs at least analytic_min_coords coordinates
    """
    D = _check_D(D)
    step = matrix_to_step(e) if isinstance(e, MatrixEmbedding) else e
    m = step.domain
    _, extra, _ = spaces.graph_levels(m)
    if not step.image(m.basepoint_label).is_zero:
        raise NormalizationError("f(bot) must be 0")
    c1, c2 = embedding_distortion(step)
    if c1 != 1:
        raise NormalizationError(f"lower lipschitz constant is {c1}, expected 1")
    if c2 > D:
        raise DistortionExceededError(f"measured distortion {c2} exceeds {D}")

    threshold = 4 - 2 * D
    if not extra or any(len(level) < 2 for level in extra):
        return CountingReport(D, threshold, 0, True, True, 0, 0, True, True)

    failures: List[str] = []
    region_12 = witness_region(step.image("1"), step.image("2"), D)
    choices = 0
    level_pairs = [list(itertools.permutations(level, 2)) for level in extra]
    for choice in itertools.product(*level_pairs):
        choices += 1
        a_label = spaces.third_level_label(["1"] + [a for a, _ in choice])
        b_label = spaces.third_level_label(["2"] + [b for _, b in choice])
        attained, _ = _attaining_region(step.image(a_label), step.image(b_label), step.bound)
        region = region_12
        for a, b in choice:
            region = region.intersect(witness_region(step.image(a), step.image(b), D))
        if not attained.issubset(region):
            failures.append(f"attaining set of ({a_label}, {b_label}) leaves {region}")
    regions_ok = not failures

    # one witness point per ordered pair of the last level, earlier levels fixed
    last = extra[-1]
    fixed_a = [level[0] for level in extra[:-1]]
    fixed_b = [level[1] for level in extra[:-1]]
    gamma = set()
    for a, b in itertools.permutations(last, 2):
        a_label = spaces.third_level_label(["1", *fixed_a, a])
        b_label = spaces.third_level_label(["2", *fixed_b, b])
        _, point = _attaining_region(step.image(a_label), step.image(b_label), step.bound)
        gamma.add(point)
    witnesses = sorted(gamma)
    vectors = {a: [evaluate(step.image(a), g) for g in witnesses] for a in last}
    separated_ok = all(abs(v) <= D for vec in vectors.values() for v in vec)
    for a, b in itertools.combinations(last, 2):
        if max(abs(x - y) for x, y in zip(vectors[a], vectors[b])) < threshold:
            separated_ok = False
            failures.append(f"{a} and {b} are closer than {threshold} on the witnesses")
    min_coords = analytic_min_coords(D, len(last))
    counting_ok = len(witnesses) >= min_coords
    if not counting_ok:
        failures.append(f"{len(witnesses)} witness coordinates < {min_coords}")

    report = CountingReport(
        D, threshold, choices, False, regions_ok, len(witnesses), min_coords,
        separated_ok, counting_ok, tuple(failures),
    )
    logger.info(
        "witness counting verified",
        extra={"D": str(D), "choices": choices, "gamma": len(witnesses), "passed": report.passed},
    )
    return report
