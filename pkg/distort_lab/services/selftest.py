"""
invariant suite behind the selftest command

each check runs on its own, is timed, and turns any exception into a failed
check instead of aborting the suite
"""
import itertools
import logging
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from distort_lab.models.embedding import StepEmbedding
from distort_lab.models.metric_space import BASEPOINT, GraphSpec, MetricSpace
from distort_lab.models.ordinal import (
    OMEGA,
    ZERO,
    Comparison,
    Ordinal,
    add,
    compare,
    fundamental_sequence,
    last_exponent,
    mul_nat,
    omega_pow,
    successor,
)
from distort_lab.models.results import CheckResult, SelftestReport
from distort_lab.models.step_function import StepFunction
from distort_lab.models.tree import TreeSpec
from distort_lab.services import certificates, derived_sets, embed, solver, spaces, stepfn, trees

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelftestScale:
    """
    knobs of the suite; the defaults cover graphs with up to 3 extra levels of
    4 points, T_1 to T_6 at widths 2 to 4, solver comparisons on 7 points and
    M(A_0^2, A_1^m) for m up to family_sizes
    """
    seed: int = 20240607
    ordinal_samples: int = 10000
    max_levels: int = 3
    max_level_size: int = 4
    max_tree_k: int = 5
    tree_widths: Tuple[int, ...] = (2, 3, 4)
    solver_points: int = 7
    solver_spaces: int = 3
    family_sizes: int = 6
    budget: int = 200000
    threads: int = 1
    inject_violation: bool = False


class CheckFailed(Exception):
    pass


def _expect(condition: bool, detail: str) -> None:
    if not condition:
        raise CheckFailed(detail)


# ordinals

def random_ordinal(rng: random.Random, depth: int = 2) -> Ordinal:
    """random cnf with up to three terms and nested exponents down to depth"""
    if depth == 0 or rng.random() < 0.3:
        return Ordinal.nat(rng.randint(0, 4))
    exponents = {random_ordinal(rng, depth - 1) for _ in range(rng.randint(1, 3))}
    terms = tuple((e, rng.randint(1, 3)) for e in sorted(exponents, reverse=True))
    return Ordinal(terms)


def _cnf_below_cube(a: int, b: int, c: int) -> Ordinal:
    """w^2*a + w*b + c, skipping zero coefficients"""
    total = ZERO
    for exponent, coefficient in ((Ordinal.nat(2), a), (Ordinal.nat(1), b), (ZERO, c)):
        if coefficient:
            total = add(total, mul_nat(omega_pow(exponent), coefficient))
    return total


def _check_ordinals(scale: SelftestScale) -> str:
    rng = random.Random(scale.seed)
    for _ in range(scale.ordinal_samples):
        a, b, c = (random_ordinal(rng) for _ in range(3))
        _expect(add(add(a, b), c) == add(a, add(b, c)), f"associativity fails at {a}, {b}, {c}")
        relations = [a < b, a == b, b < a]
        _expect(sum(relations) == 1, f"comparison of {a} and {b} is not total")
        _expect((compare(a, b) == Comparison.LT) == (a < b), f"compare disagrees with < on {a}, {b}")
        if a.is_limit:
            seq = [fundamental_sequence(a, n) for n in range(1, 5)]
            _expect(all(x < y for x, y in zip(seq, seq[1:])), f"fundamental sequence of {a} does not increase")
            _expect(all(x < a for x in seq), f"fundamental sequence of {a} overshoots")

    alphas = [Ordinal.nat(k) for k in range(5)] + [add(OMEGA, Ordinal.nat(k)) for k in range(3)] + [mul_nat(OMEGA, 2)]
    for alpha in alphas:
        for n in range(1, 4):
            beta = mul_nat(omega_pow(alpha), n)
            _expect(
                derived_sets.cb_rank_interval(beta) == successor(alpha),
                f"cb rank of [0, {beta}] is not {successor(alpha)}",
            )

    below = sorted(
        _cnf_below_cube(a, b, c) for a, b, c in itertools.product(range(3), repeat=3)
    )
    for gamma in below:
        for alpha in (ZERO, Ordinal.nat(1), Ordinal.nat(2)):
            delta = derived_sets.next_derived_point(gamma, alpha)
            _expect(delta > gamma and (alpha.is_zero or last_exponent(delta) >= alpha), f"bad next point {delta}")
            skipped = [
                e for e in below
                if gamma < e < delta and (alpha.is_zero or last_exponent(e) >= alpha)
            ]
            _expect(not skipped, f"next_derived_point({gamma}, {alpha}) skips {skipped[0] if skipped else ''}")
    return f"{scale.ordinal_samples} random triples"


# trees

def _check_trees(scale: SelftestScale) -> str:
    checked = 0
    for k in range(scale.max_tree_k + 1):
        spec = TreeSpec(Ordinal.nat(k))
        for width in scale.tree_widths:
            t = trees.truncate(spec, width)
            _expect(trees.index_finite(t) == k + 1, f"index of truncated T_{k + 1} is not {k + 1}")
            stages = trees.maximal_stages(t)
            for node, stage in stages.items():
                _expect(trees.rank(spec, node).as_int() == stage, f"rank of {node} in T_{k + 1} is not {stage}")
                checked += 1
    return f"{checked} nodes"


# embeddings

def _check_embed_finite(scale: SelftestScale) -> str:
    count = 0
    for h in range(scale.max_levels + 1):
        for sizes in itertools.product(range(1, scale.max_level_size + 1), repeat=h):
            embed.embed_finite(spaces.build_graph(GraphSpec(sizes)), supplement=True)
            count += 1
    return f"{count} size vectors"


def _check_amalgam(scale: SelftestScale) -> str:
    parts = [embed.embed_finite(spaces.build_graph(GraphSpec((n,)))) for n in (2, 3)]
    shared = spaces.shared_labels_for(())
    e = embed.embed_amalgam(parts, shared)
    _expect(e.pattern_count == 1, f"A = {{bot,1,2}} gave {e.pattern_count} patterns")
    _expect(embed.restriction_consistent(e, parts, shared), "a canonical copy is not isometric")
    family = embed.embed_family(Ordinal.nat(1), (), 2)
    return f"{e.domain.size} + {family.embedding.domain.size} points"


# metrics and solver

def _star() -> MetricSpace:
    labels = [BASEPOINT, "x", "y", "z"]
    rows = [[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 2], [1, 2, 2, 0]]
    return MetricSpace.from_rows(labels, rows)


def _broken_metric() -> MetricSpace:
    labels = [BASEPOINT, "x", "y"]
    rows = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    return MetricSpace.from_rows(labels, rows)


def _check_metrics(scale: SelftestScale) -> str:
    spaces_to_check = [spaces.build_graph(GraphSpec((2, 3))), _star()]
    if scale.inject_violation:
        spaces_to_check.append(_broken_metric())
    for m in spaces_to_check:
        report = spaces.validate_metric(m)
        if not report.passed:
            first = report.violations[0]
            raise CheckFailed(f"{first.kind} violated at {list(first.points)}: {first.detail}")
    return f"{len(spaces_to_check)} spaces"


def _check_solver(scale: SelftestScale) -> str:
    samples = [_star()] + [
        spaces.random_graph_metric(scale.seed + k, scale.solver_points) for k in range(scale.solver_spaces)
    ]
    compared = 0
    for m in samples:
        previous = None
        for n in (1, 2):
            result = solver.min_distortion(m, n, budget=scale.budget, threads=scale.threads)
            _expect(result.status == solver.EXACT, f"{m.size} points at n={n} left open at [{result.lower}, {result.upper}]")
            oracle = solver.exhaustive_min_distortion(m, n)
            _expect(result.upper == oracle, f"search gives {result.upper}, enumeration {oracle} (n={n})")
            _expect(previous is None or result.upper <= previous, f"optimum grows from n={n - 1} to n={n}")
            previous = result.upper
            compared += 1
        frechet = solver.min_distortion(m, m.size)
        _expect(frechet.upper == frechet.lower == 1, "fréchet dimension does not give distortion 1")
    return f"{compared} exact comparisons"


def _check_counting(scale: SelftestScale) -> str:
    chain = [spaces.build_graph(GraphSpec((m,))) for m in range(1, scale.family_sizes + 1)]
    results = solver.nested_min_distortion(chain, 2, budget=scale.budget, threads=scale.threads)
    witnessed = 0
    for m, result in zip(chain, results):
        _expect(result.status == solver.EXACT, f"{m.size} points left open at [{result.lower}, {result.upper}]")
        _expect(result.upper >= certificates.packing_lower_bound(m, 2), f"optimum {result.upper} below the packing bound")
        _expect(certificates.counting_consistent(m, 2, result.upper), "achieved distortion contradicts the counting bound")
        if result.upper < 2:
            report = certificates.verify_witness_counting(result.witness, result.upper)
            _expect(report.passed, "; ".join(report.failures))
            witnessed += 1
    if len(chain) >= 5:
        _expect(results[4].lower >= Fraction(4, 3), f"lower bound {results[4].lower} < 4/3 with 5 points per level")
    return f"optima {', '.join(str(r.upper) for r in results)}; {witnessed} witnesses verified"


def _check_packing(scale: SelftestScale) -> str:
    cases = [(Fraction(1), 1), (Fraction(1), 2), (Fraction(6, 5), 1), (Fraction(6, 5), 2), (Fraction(3, 2), 1)]
    for D, n in cases:
        oracle = certificates.packing_number(D, n)
        _expect(certificates.max_separated(D, n) == oracle, f"capacity at D={D}, n={n} differs from {oracle}")
    return f"{len(cases)} cases"


def _check_witness_regions(scale: SelftestScale) -> str:
    # [0, w*2]: f_a is 1 on [0, w] and -1 above, f_b is -1 throughout
    bound = mul_nat(OMEGA, 2)
    f_bot = StepFunction.constant(bound, 0)
    f_a = StepFunction(bound, (OMEGA, bound), (Fraction(1), Fraction(-1)))
    f_b = StepFunction.constant(bound, -1)
    m = MetricSpace.from_rows([BASEPOINT, "a", "b"], [[0, 1, 1], [1, 0, 2], [1, 2, 0]])
    e = StepEmbedding(m, bound, (f_bot, f_a, f_b), normalized=True)
    report = stepfn.witness_report(e, [("a", "b")], Fraction(1), [ZERO, Ordinal.nat(1)], 64)
    # region [0, w]: w + 1 points, a single limit point
    _expect(report.count(ZERO) == 64, f"expected a capped count, got {report.count(ZERO)}")
    _expect(report.count(Ordinal.nat(1)) == 1, f"expected one limit point, got {report.count(Ordinal.nat(1))}")
    return str(report.region)


CHECKS: List[Tuple[str, Callable[[SelftestScale], str]]] = [
    ("ordinal_properties", _check_ordinals),
    ("tree_oracle", _check_trees),
    ("embed_finite_isometry", _check_embed_finite),
    ("amalgam_embedding", _check_amalgam),
    ("metric_axioms", _check_metrics),
    ("solver_vs_oracle", _check_solver),
    ("counting_certificate", _check_counting),
    ("separated_capacity", _check_packing),
    ("witness_regions", _check_witness_regions),
]


def run_selftest(scale: Optional[SelftestScale] = None, only: Optional[List[str]] = None) -> SelftestReport:
    scale = scale or SelftestScale()
    results = []
    for name, check in CHECKS:
        if only and name not in only:
            continue
        start = time.perf_counter()
        try:
            detail, passed = check(scale), True
        except Exception as exc:
            detail, passed = f"{type(exc).__name__}: {exc}", False
        duration_ms = round((time.perf_counter() - start) * 1000, 2)
        results.append(CheckResult(name, passed, duration_ms, detail))
        log = logger.info if passed else logger.warning
        log("check finished", extra={"check": name, "passed": passed, "duration_ms": duration_ms})
    return SelftestReport(tuple(results))
