"""
exact minimum distortion of a finite metric space into l_inf^n

the search runs over assignments pair -> (coordinate, sign) as a sequence of
threshold tests (see decision). the first test asks for distortion at the
certified lower bound; after that each test asks for something strictly
below the incumbent, and every pattern it returns is solved exactly per
coordinate (see subproblem) to give the next incumbent. a test that comes
back empty and complete proves the incumbent optimal. coordinates are opened
in index order and only with sign +1, which removes coordinate permutations
and per-coordinate sign flips
"""
import csv
import heapq
import io
import itertools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from distort_lab.config import settings
from distort_lab.models.embedding import MatrixEmbedding
from distort_lab.models.metric_space import MetricSpace
from distort_lab.models.results import DistortionResult, SearchStats
from distort_lab.services import certificates, decision
from distort_lab.services.embed import frechet_embedding
from distort_lab.services.stepfn import embedding_distortion, matrix_to_step
from distort_lab.services.subproblem import CYCLES, SOLVERS, relax
from distort_lab.utils.exceptions import DomainError, VerificationError
from distort_lab.utils.io import write_atomic
from distort_lab.utils.rationals import scale_to_integers

logger = logging.getLogger(__name__)

EXACT = "exact"
BOUNDED = "bounded"
TIMEOUT = "timeout"

# subsets of frechet coordinates tried exhaustively for the starting incumbent
SUBSET_LIMIT = 2000

Phi = Tuple[Tuple[Fraction, ...], ...]


@dataclass
class _Best:
    value: Optional[Fraction] = None
    phi: Optional[Phi] = None

    def offer(self, value: Fraction, phi: Phi) -> None:
        if self.value is None or value < self.value:
            self.value, self.phi = value, phi


def branch_order(m: MetricSpace) -> Tuple[Tuple[int, int], ...]:
    """pairs by decreasing distance, ties by point labels"""
    labels = m.labels
    return tuple(sorted(m.pairs(), key=lambda p: (-m.dist[p[0]][p[1]], labels[p[0]], labels[p[1]])))


def lipschitz_constants(dist, phi: Phi) -> Tuple[Fraction, Fraction]:
    """tight (C1, C2) of the coordinate rows phi"""
    n = len(dist)
    ratios = [
        max((abs(a - b) for a, b in zip(phi[x], phi[y])), default=Fraction(0)) / dist[x][y]
        for x in range(n)
        for y in range(x + 1, n)
    ]
    return min(ratios), max(ratios)


def _normalized(dist, phi: Phi) -> Optional[Tuple[Fraction, Phi]]:
    """(distortion, rows scaled to C1 = 1), or None when phi is not injective"""
    c1, c2 = lipschitz_constants(dist, phi)
    if c1 == 0:
        return None
    return c2 / c1, tuple(tuple(v / c1 for v in row) for row in phi)


# starting incumbents

def _line_embedding(m: MetricSpace, n: int) -> Phi:
    """points on a line at the lengths of the path through them in point order"""
    positions = [Fraction(0)]
    for k in range(1, m.size):
        positions.append(positions[-1] + m.dist[k - 1][k])
    shift = positions[m.basepoint]
    return tuple((p - shift,) + (Fraction(0),) * (n - 1) for p in positions)


def _frechet_subset(m: MetricSpace, n: int) -> Phi:
    """
    the n coordinates x -> d(x, p) - d(bot, p) that separate pairs best

    all subsets when there are few, otherwise greedily one coordinate at a time
    """
    (dist,), _ = scale_to_integers(m.dist)
    columns = dist - dist[m.basepoint][None, :]
    iu = np.triu_indices(m.size, 1)
    pair_dist = dist[iu].astype(float)
    gaps = [np.abs(columns[:, p][:, None] - columns[:, p][None, :])[iu].astype(float) for p in range(m.size)]

    def score(subset) -> float:
        return float((np.max([gaps[p] for p in subset], axis=0) / pair_dist).min())

    if math.comb(m.size, n) <= SUBSET_LIMIT:
        chosen = max(itertools.combinations(range(m.size), n), key=score)
    else:
        chosen = ()
        for _ in range(n):
            chosen += (max((p for p in range(m.size) if p not in chosen), key=lambda p: score(chosen + (p,))),)
    return tuple(tuple(m.dist[x][p] - m.dist[m.basepoint][p] for p in chosen) for x in range(m.size))


def _padded(start: MatrixEmbedding, n: int) -> Optional[Phi]:
    if start.dims > n:
        return None
    return tuple(tuple(row) + (Fraction(0),) * (n - start.dims) for row in start.entries)


def _initial_incumbent(m: MetricSpace, n: int, start: Optional[MatrixEmbedding]) -> _Best:
    best = _Best()
    candidates = [_line_embedding(m, n), _frechet_subset(m, n)]
    if start is not None:
        if start.domain.labels != m.labels:
            raise DomainError("a starting embedding must live on the same points")
        candidates.append(_padded(start, n))
    for phi in candidates:
        normalized = _normalized(m.dist, phi) if phi is not None else None
        if normalized is not None:
            best.offer(*normalized)
    return best


# search

def _witness(m: MetricSpace, phi: Phi) -> MatrixEmbedding:
    dims = len(phi[0]) if phi else 0
    return MatrixEmbedding(m, tuple(f"c{j}" for j in range(1, dims + 1)), phi)


def _verified(m: MetricSpace, witness: MatrixEmbedding, claimed: Fraction) -> None:
    c1, c2 = embedding_distortion(matrix_to_step(witness))
    if c1 != 1 or c2 != claimed:
        raise VerificationError(f"witness measures ({c1}, {c2}), expected (1, {claimed})")


def _frechet_result(m: MetricSpace, n: int) -> DistortionResult:
    """n >= |m| - 1: the fréchet map without its last coordinate is already isometric"""
    full = frechet_embedding(m)
    keep = min(n, m.size - 1)
    rows = tuple(tuple(row[:keep]) + (Fraction(0),) * (n - keep) for row in full.entries)
    witness = _witness(m, rows)
    _verified(m, witness, Fraction(1))
    return DistortionResult(Fraction(1), Fraction(1), witness, SearchStats(), EXACT, n)


def _check_input(m: MetricSpace, n: int) -> None:
    if m.size < 2:
        raise DomainError("distortion needs at least two points")
    if n < 1:
        raise DomainError(f"dimension must be positive, got {n}")


def _pool(threads: int):
    return ProcessPoolExecutor(max_workers=threads) if threads > 1 else nullcontext()


def min_distortion(
    m: MetricSpace,
    n: int,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
    method: Optional[str] = None,
    time_limit: Optional[float] = None,
    lower_bound: Optional[Fraction] = None,
    start: Optional[MatrixEmbedding] = None,
) -> DistortionResult:
    """
    exact optimum within the node budget, else certified bounds

    lower_bound is a bound proved elsewhere, e.g. the optimum of an isometric
    subspace; start is an embedding of m into at most n coordinates to beat
    """
    _check_input(m, n)
    budget = settings.budget if budget is None else budget
    threads = settings.threads if threads is None else threads
    method = settings.subproblem if method is None else method
    time_limit = settings.solver_time_limit if time_limit is None else time_limit
    if method not in SOLVERS:
        raise DomainError(f"unknown subproblem method {method!r}")
    if n >= m.size - 1:
        return _frechet_result(m, n)

    certified = certificates.counting_lower_bound(m, n)
    bounds = [Fraction(1), certificates.packing_lower_bound(m, n), certified, lower_bound]
    lower = max(Fraction(b) for b in bounds if b is not None)
    best = _initial_incumbent(m, n, start)
    if lower > best.value:
        raise DomainError(f"lower bound {lower} exceeds the achieved distortion {best.value}")

    deadline = time.time() + time_limit if time_limit else None
    problem = decision.make_problem(m, n, branch_order(m))
    stats = SearchStats()
    status = EXACT
    target, strict = lower, False
    with _pool(threads) as pool:
        while best.value > lower:
            outcome = decision.decide(
                problem, decision.threshold(problem, target, strict), budget - stats.nodes, deadline, pool
            )
            stats.merge(outcome.stats)
            stats.subproblems += outcome.stats.subproblems
            if outcome.pattern is not None:
                r = relax(m.dist, m.basepoint, n, outcome.pattern, method)
                normalized = _normalized(m.dist, r.phi) if r.feasible else None
                if normalized is None or normalized[0] > target or (strict and normalized[0] == target):
                    raise VerificationError(f"a pattern accepted at {target} does not solve below it")
                best.offer(*normalized)
            elif not outcome.complete:
                status = TIMEOUT if outcome.stats.timed_out else BOUNDED
                break
            elif strict:
                # nothing strictly below the incumbent
                break
            target, strict = best.value, True
            if best.value > lower and stats.nodes >= budget:
                status = BOUNDED
                break

    upper = best.value
    if status == EXACT:
        lower = upper
    witness = _witness(m, best.phi)
    _verified(m, witness, upper)
    logger.info(
        "search finished",
        extra={
            "points": m.size,
            "dims": n,
            "status": status,
            "lower": str(lower),
            "upper": str(upper),
            "nodes": stats.nodes,
            "subproblems": stats.subproblems,
        },
    )
    return DistortionResult(lower, upper, witness, stats, status, n, certified)


def nested_min_distortion(chain: Sequence[MetricSpace], n: int, **options) -> List[DistortionResult]:
    """
    optima along spaces each of which is an isometric subspace of the next

    an exact optimum of one space is a lower bound for every later one
    """
    results: List[DistortionResult] = []
    for k, m in enumerate(chain):
        lower = None
        if k:
            previous = chain[k - 1]
            missing = [label for label in previous.labels if label not in m.position]
            if missing or m.subspace(previous.labels).dist != previous.dist:
                raise DomainError(f"space {k - 1} of the chain is not an isometric subspace of space {k}")
            if results[-1].status == EXACT:
                lower = results[-1].upper
        results.append(min_distortion(m, n, lower_bound=lower, **options))
    return results


def exhaustive_min_distortion(m: MetricSpace, n: int, method: str = CYCLES) -> Fraction:
    """
    optimum by plain enumeration, sharing nothing with the search but the lp

    n = 1 tries every order of the points on the line. n >= 2 walks the lazy
    branching tree over every coordinate and sign, without symmetry reduction
    or an incumbent, cheapest relaxation first: relaxations only grow along a
    branch, so the first node whose optimal coordinates separate every pair is
    optimal
    """
    _check_input(m, n)
    if n == 1:
        solver = SOLVERS[method]
        best: Optional[Fraction] = None
        for perm in itertools.permutations(range(m.size)):
            if perm[0] > perm[-1]:
                continue
            assigned = [(perm[j], perm[i], 1) for i in range(m.size) for j in range(i + 1, m.size)]
            solved = solver(m.dist, m.basepoint, assigned)
            if solved is not None and (best is None or solved[0] < best):
                best = solved[0]
        return best

    tie = itertools.count()
    heap = [(Fraction(0), next(tie), (), None)]
    seen = {()}
    while heap:
        key, _, node, r = heapq.heappop(heap)
        if r is None:
            r = relax(m.dist, m.basepoint, n, node, method)
            if not r.feasible:
                continue
            if r.value > key:
                heapq.heappush(heap, (r.value, next(tie), node, r))
                continue
        pair = next(
            (
                (x, y) for x, y in m.pairs()
                if all(abs(a - b) < m.dist[x][y] for a, b in zip(r.phi[x], r.phi[y]))
            ),
            None,
        )
        if pair is None:
            return r.value
        for j in range(n):
            for sign in (1, -1):
                kid = tuple(sorted(node + ((pair[0], pair[1], j, sign),)))
                if kid not in seen:
                    seen.add(kid)
                    heapq.heappush(heap, (r.value, next(tie), kid, None))
    raise VerificationError("enumeration ended without a separating node")


def distortion_curve(m: MetricSpace, dims: Sequence[int], **options) -> List[Tuple[int, DistortionResult]]:
    """one result per dimension; each witness seeds the next larger dimension"""
    rows: List[Tuple[int, DistortionResult]] = []
    previous: Optional[DistortionResult] = None
    for n in sorted(dims):
        start = previous.witness if previous is not None else None
        result = min_distortion(m, n, start=start, **options)
        rows.append((n, result))
        previous = result
    return rows


def curve_csv(rows: Sequence[Tuple[int, DistortionResult]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "D_min_num", "D_min_den"])
    for n, result in rows:
        writer.writerow([n, result.upper.numerator, result.upper.denominator])
    return buffer.getvalue()


def write_curve(rows: Sequence[Tuple[int, DistortionResult]], path: Path) -> None:
    write_atomic(path, curve_csv(rows))
