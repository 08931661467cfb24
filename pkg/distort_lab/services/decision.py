"""
does a finite metric space embed into l_inf^n with distortion at most D, or below D

per coordinate the constraints  phi(v) - phi(u) <= w(u, v)  are held as an
all-pairs shortest path matrix. lipschitz edges weigh D d(u, v); a pair
assigned (coordinate, sign) adds one edge of weight -d(x, y), which updates the
matrix in O(N^2) and exposes a negative cycle at once. every open pair is then
checked against what is left: a pair with no viable option closes the node,
a pair with exactly one is assigned without branching.

weights are integers. distances are scaled by their common denominator and
D = p/q is cleared; a strict test packs an infinitesimal decrease of D into
the low digits of every lipschitz weight, so path sums compare
lexicographically
"""
import itertools
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from distort_lab.models.metric_space import MetricSpace
from distort_lab.models.results import SearchStats
from distort_lab.utils.rationals import scale_to_integers

logger = logging.getLogger(__name__)

# breadth-first expansion before the frontier is handed out as subtrees
SPLIT_DEPTH = 3
SPLIT_WIDTH = 4

# candidate potentials are mixed per coordinate up to this many coordinates
MIXED_CANDIDATES = 3

_INT64_SAFE = 2 ** 61

# (x, y, coordinate, sign): sign * (phi_j(x) - phi_j(y)) >= d(x, y)
Step = Tuple[int, int, int, int]


@dataclass(frozen=True)
class Problem:
    basepoint: int
    dims: int
    dist: np.ndarray
    rank: np.ndarray
    upper: np.ndarray


@dataclass(frozen=True)
class Threshold:
    """integer weights of one test; separation[x, y] is d(x, y) in lipschitz units"""
    D: Fraction
    strict: bool
    lipschitz: np.ndarray
    separation: np.ndarray
    fresh_ok: bool


@dataclass(frozen=True)
class State:
    rows: Tuple[np.ndarray, ...]
    used: int


@dataclass(frozen=True)
class _Analysis:
    count: np.ndarray
    open: np.ndarray
    plus: Tuple[np.ndarray, ...]
    minus: Tuple[np.ndarray, ...]


@dataclass(frozen=True)
class Task:
    problem: Problem
    threshold: Threshold
    state: State
    budget: int
    deadline: Optional[float] = None


@dataclass
class Outcome:
    pattern: Optional[Tuple[Step, ...]]
    complete: bool
    stats: SearchStats


def make_problem(m: MetricSpace, n: int, order: Sequence[Tuple[int, int]]) -> Problem:
    """order ranks the pairs for tie-breaking; earlier pairs are branched on first"""
    (dist,), _ = scale_to_integers(m.dist)
    size = m.size
    rank = np.full((size, size), len(order), dtype=np.int64)
    for k, (x, y) in enumerate(order):
        rank[x, y] = rank[y, x] = k
    upper = np.triu(np.ones((size, size), dtype=bool), 1)
    return Problem(m.basepoint, n, dist, rank, upper)


def threshold(problem: Problem, D: Fraction, strict: bool = False) -> Threshold:
    D = Fraction(D)
    p, q = D.numerator, D.denominator
    size = len(problem.dist)
    peak_d = int(problem.dist.max())
    # the low digits of a path sum stay below big / 2 in absolute value
    big = 4 * size * peak_d * q + 1 if strict else 1
    unit = p * big - (q if strict else 0)
    sep_unit = q * big
    peak = 2 * size * peak_d * max(unit, sep_unit)
    dtype = np.int64 if peak < _INT64_SAFE else object
    dist = problem.dist.astype(dtype)
    return Threshold(D, strict, dist * unit, dist * sep_unit, unit >= sep_unit)


def root(problem: Problem, thr: Threshold) -> State:
    return State(tuple(thr.lipschitz for _ in range(problem.dims)), 0)


def assign(state: State, thr: Threshold, x: int, y: int, j: int, sign: int) -> Optional[State]:
    """add sign * (phi_j(x) - phi_j(y)) >= d(x, y); None on a negative cycle"""
    u, v = (x, y) if sign > 0 else (y, x)
    rows = state.rows[j]
    w = thr.separation[x, y]
    if rows[v, u] < w:
        return None
    updated = np.minimum(rows, rows[:, u:u + 1] - w + rows[v:v + 1, :])
    return State(state.rows[:j] + (updated,) + state.rows[j + 1:], max(state.used, j + 1))


def _entailed_at(state: State, thr: Threshold, x: int, y: int) -> bool:
    w = thr.separation[x, y]
    return any(rows[x, y] <= -w or rows[y, x] <= -w for rows in state.rows[:state.used])


def _analyse(problem: Problem, thr: Threshold, state: State) -> _Analysis:
    S = thr.separation
    count = np.zeros(S.shape, dtype=np.int64)
    entailed = np.zeros(S.shape, dtype=bool)
    plus, minus = [], []
    for rows in state.rows[:state.used]:
        up, down = rows.T >= S, rows >= S
        plus.append(up)
        minus.append(down)
        count += up
        count += down
        entailed |= (rows <= -S) | (rows.T <= -S)
    if state.used < problem.dims and thr.fresh_ok:
        count += 1
    return _Analysis(count, problem.upper & ~entailed, tuple(plus), tuple(minus))


def _only_option(a: _Analysis, x: int, y: int) -> Optional[Tuple[int, int]]:
    for j, (up, down) in enumerate(zip(a.plus, a.minus)):
        if up[x, y]:
            return j, 1
        if down[x, y]:
            return j, -1
    return None


def _propagate(problem: Problem, thr: Threshold, state: State, stats: SearchStats) -> Optional[Tuple[State, _Analysis]]:
    """assign every pair left with a single option until none is; None when a pair has none"""
    while True:
        a = _analyse(problem, thr, state)
        if (a.count[a.open] == 0).any():
            stats.pruned += 1
            return None
        xs, ys = np.nonzero(a.open & (a.count == 1))
        if not len(xs):
            return state, a
        opened = False
        for k in np.argsort(problem.rank[xs, ys], kind="stable"):
            x, y = int(xs[k]), int(ys[k])
            if _entailed_at(state, thr, x, y):
                continue
            option = _only_option(a, x, y)
            if option is None:
                # a fresh coordinate: opening one changes the options of the others
                if opened:
                    continue
                option, opened = (state.used, 1), True
            state = assign(state, thr, x, y, *option)
            if state is None:
                stats.infeasible += 1
                return None


def _potentials(state: State, basepoint: int) -> Iterable[List[np.ndarray]]:
    """the highest and lowest feasible coordinates, mixed per coordinate when few"""
    high = [rows[basepoint, :] for rows in state.rows[:state.used]]
    low = [-rows[:, basepoint] for rows in state.rows[:state.used]]
    if state.used <= MIXED_CANDIDATES:
        for choice in itertools.product((0, 1), repeat=state.used):
            yield [(high, low)[c][j] for j, c in enumerate(choice)]
    else:
        yield high
        yield low


def _covered(phis: Sequence[np.ndarray], S: np.ndarray) -> np.ndarray:
    covered = np.zeros(S.shape, dtype=bool)
    for phi in phis:
        diff = phi[:, None] - phi[None, :]
        covered |= (diff >= S) | (-diff >= S)
    return covered


def _pattern(phis: Sequence[np.ndarray], S: np.ndarray, upper: np.ndarray) -> Tuple[Step, ...]:
    steps = []
    for x, y in zip(*np.nonzero(upper)):
        x, y = int(x), int(y)
        for j, phi in enumerate(phis):
            diff = phi[x] - phi[y]
            if diff >= S[x, y] or -diff >= S[x, y]:
                steps.append((x, y, j, 1 if diff > 0 else -1))
                break
    return tuple(steps)


def _expand(problem: Problem, thr: Threshold, state: State, stats: SearchStats) -> Tuple[Optional[Tuple[Step, ...]], List[State]]:
    """one node: a separating pattern, or the children of its most constrained violated pair"""
    stats.nodes += 1
    propagated = _propagate(problem, thr, state, stats)
    if propagated is None:
        return None, []
    state, a = propagated
    violated = None
    for phis in _potentials(state, problem.basepoint):
        left = problem.upper & ~_covered(phis, thr.separation)
        if not left.any():
            stats.closed += 1
            return _pattern(phis, thr.separation, problem.upper), []
        if violated is None:
            violated = left
    xs, ys = np.nonzero(violated)
    key = a.count[xs, ys] * (problem.rank.max() + 1) + problem.rank[xs, ys]
    k = int(np.argmin(key))
    x, y = int(xs[k]), int(ys[k])

    options = [
        (j, sign)
        for j in range(state.used)
        for sign, ok in ((1, a.plus[j]), (-1, a.minus[j]))
        if ok[x, y]
    ]
    if state.used < problem.dims and thr.fresh_ok:
        options.append((state.used, 1))
    kids = []
    for j, sign in options:
        kid = assign(state, thr, x, y, j, sign)
        if kid is None:
            stats.infeasible += 1
        else:
            kids.append(kid)
    return None, kids


def search_subtree(task: Task) -> Outcome:
    """depth-first search of one subtree; stops at the first pattern, the budget or the deadline"""
    stats = SearchStats(subproblems=1)
    stack = [task.state]
    while stack:
        if stats.nodes >= task.budget:
            stats.exhausted = True
            return Outcome(None, False, stats)
        if task.deadline is not None and time.time() > task.deadline:
            stats.timed_out = True
            return Outcome(None, False, stats)
        pattern, kids = _expand(task.problem, task.threshold, stack.pop(), stats)
        if pattern is not None:
            return Outcome(pattern, True, stats)
        stack.extend(reversed(kids))
    return Outcome(None, True, stats)


def decide(problem: Problem, thr: Threshold, budget: int, deadline: Optional[float] = None, pool=None) -> Outcome:
    """
    a separating pattern feasible at the threshold, or proof that none exists

    the frontier after a fixed breadth-first expansion is split into subtrees
    with equal budget shares. the pattern of the earliest subtree wins and
    only subtrees up to it are counted, so the outcome does not depend on
    whether a pool ran them
    """
    stats = SearchStats()
    frontier = [root(problem, thr)]
    for _ in range(SPLIT_DEPTH):
        if not frontier or len(frontier) >= SPLIT_WIDTH:
            break
        expanded = []
        for state in frontier:
            pattern, kids = _expand(problem, thr, state, stats)
            if pattern is not None:
                return Outcome(pattern, True, stats)
            expanded.extend(kids)
        frontier = expanded
    if not frontier:
        return Outcome(None, True, stats)

    share = max(1, (budget - stats.nodes) // len(frontier))
    tasks = [Task(problem, thr, state, share, deadline) for state in frontier]
    if pool is not None and len(tasks) > 1:
        outcomes = pool.map(search_subtree, tasks)
    else:
        outcomes = (search_subtree(task) for task in tasks)
    complete = True
    for outcome in outcomes:
        stats.merge(outcome.stats)
        stats.subproblems += 1
        if outcome.pattern is not None:
            return Outcome(outcome.pattern, True, stats)
        complete = complete and outcome.complete
    logger.debug(
        "threshold decided",
        extra={"D": str(thr.D), "strict": thr.strict, "complete": complete, "nodes": stats.nodes},
    )
    return Outcome(None, complete, stats)
