from fractions import Fraction

import numpy as np
import pytest

from distort_lab.models.metric_space import BASEPOINT, GraphSpec, MetricSpace
from distort_lab.services import certificates, decision, solver, spaces
from distort_lab.services.stepfn import embedding_distortion, matrix_to_step
from distort_lab.utils.exceptions import DomainError


@pytest.fixture
def path3():
    """three points on a line: embeds isometrically in one coordinate"""
    labels = [BASEPOINT, "x", "y"]
    rows = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    return MetricSpace.from_rows(labels, rows)


@pytest.fixture(scope="module")
def level_family():
    """M(A_0^2, A_1^m) for m = 1..6, each an isometric subspace of the next"""
    return [spaces.build_graph(GraphSpec((m,))) for m in range(1, 7)]


def _measured(result):
    return embedding_distortion(matrix_to_step(result.witness))


@pytest.mark.solver
class TestMinDistortion:
    """test the threshold search"""

    def test_star_on_a_line(self, star):
        result = solver.min_distortion(star, 1, budget=20000, threads=1)
        assert result.status == solver.EXACT
        assert result.lower == result.upper == 3
        assert _measured(result) == (1, 3)

    def test_line_is_isometric(self, path3):
        result = solver.min_distortion(path3, 1, budget=1000, threads=1)
        assert result.upper == 1
        assert result.status == solver.EXACT

    def test_frechet_dimension(self, star):
        result = solver.min_distortion(star, star.size - 1, budget=10)
        assert result.upper == result.lower == 1
        assert result.stats.nodes == 0
        assert result.witness.dims == star.size - 1

    def test_simplex_subproblem_agrees(self, star):
        by_cycles = solver.min_distortion(star, 1, budget=20000, method="cycles")
        by_simplex = solver.min_distortion(star, 1, budget=20000, method="simplex")
        assert by_cycles.upper == by_simplex.upper == 3

    def test_two_coordinates_match_oracle(self, star):
        result = solver.min_distortion(star, 2, budget=20000)
        assert result.status == solver.EXACT
        assert result.upper == solver.exhaustive_min_distortion(star, 2)

    @pytest.mark.parametrize("points", [4, 5])
    @pytest.mark.parametrize("seed", [1, 2, 3])
    @pytest.mark.parametrize("n", [1, 2])
    def test_random_metrics_match_oracle(self, seed, n, points):
        m = spaces.random_graph_metric(seed, points)
        result = solver.min_distortion(m, n, budget=200000)
        assert result.status == solver.EXACT
        assert result.upper == solver.exhaustive_min_distortion(m, n)
        assert _measured(result) == (1, result.upper)

    @pytest.mark.slow
    @pytest.mark.parametrize("points", [6, 7])
    @pytest.mark.parametrize("seed", [1, 2, 3])
    @pytest.mark.parametrize("n", [1, 2])
    def test_larger_metrics_match_oracle(self, seed, n, points):
        m = spaces.random_graph_metric(seed, points)
        result = solver.min_distortion(m, n, budget=200000)
        assert result.status == solver.EXACT
        assert result.upper == solver.exhaustive_min_distortion(m, n)

    @pytest.mark.parametrize("seed", [4, 5])
    def test_optimum_does_not_grow_with_dimension(self, seed):
        m = spaces.random_graph_metric(seed, 6)
        uppers = [solver.min_distortion(m, n, budget=200000).upper for n in range(1, m.size)]
        assert all(a >= b for a, b in zip(uppers, uppers[1:]))
        assert uppers[-1] == 1

    def test_worker_count_does_not_change_result(self, star):
        single = solver.min_distortion(star, 2, budget=20000, threads=1)
        pooled = solver.min_distortion(star, 2, budget=20000, threads=2)
        assert (single.lower, single.upper, single.status) == (pooled.lower, pooled.upper, pooled.status)
        assert single.witness.entries == pooled.witness.entries

    @pytest.mark.slow
    def test_certified_bounds_on_level_of_five(self):
        """test M(A_0^2, A_1^5) in two coordinates is solved exactly above both bounds"""
        m = spaces.build_graph(GraphSpec((5,)))
        result = solver.min_distortion(m, 2, budget=200000, threads=1)
        assert result.status == solver.EXACT
        assert result.certified_lower == Fraction(4, 3)
        assert result.lower == result.upper >= 2
        assert certificates.counting_consistent(m, 2, result.upper)

    def test_exhausted_budget_reports_bounds(self, star):
        result = solver.min_distortion(star, 1, budget=1, threads=1)
        assert result.status == solver.BOUNDED
        assert result.lower == certificates.packing_lower_bound(star, 1) == 2
        assert result.upper >= 3
        assert _measured(result) == (1, result.upper)

    def test_start_at_the_optimum(self, star):
        optimum = solver.min_distortion(star, 1, budget=20000)
        again = solver.min_distortion(star, 1, lower_bound=Fraction(3), start=optimum.witness)
        assert again.status == solver.EXACT
        assert again.upper == 3
        assert again.stats.nodes == 0

    def test_lower_bound_above_incumbent(self, star):
        with pytest.raises(DomainError):
            solver.min_distortion(star, 1, lower_bound=Fraction(6))

    def test_invalid_input(self, star):
        with pytest.raises(DomainError):
            solver.min_distortion(star, 0)
        with pytest.raises(DomainError):
            solver.min_distortion(star.subspace([BASEPOINT]), 1)
        with pytest.raises(DomainError):
            solver.min_distortion(star, 1, method="newton")


@pytest.mark.solver
@pytest.mark.slow
class TestLevelFamily:
    """test exact optima of M(A_0^2, A_1^m) along the isometric chain"""

    @pytest.mark.parametrize("n", [1, 2])
    def test_family_solved_exactly(self, level_family, n):
        results = solver.nested_min_distortion(level_family, n, budget=200000, threads=1)
        uppers = [r.upper for r in results]
        assert all(r.status == solver.EXACT for r in results)
        assert all(a <= b for a, b in zip(uppers, uppers[1:]))
        for m, r in zip(level_family, results):
            assert r.upper >= certificates.packing_lower_bound(m, n)
            assert certificates.counting_consistent(m, n, r.upper)
            assert _measured(r) == (1, r.upper)

    def test_chain_must_be_isometric(self, star, path3):
        with pytest.raises(DomainError):
            solver.nested_min_distortion([path3, star], 1)


@pytest.mark.unit
@pytest.mark.solver
class TestDecision:
    """test single threshold tests"""

    def test_branch_order(self, star):
        order = solver.branch_order(star)
        assert order[:3] == ((1, 2), (1, 3), (2, 3))
        assert len(order) == 6

    def test_lipschitz_constants(self, path3):
        phi = ((Fraction(0),), (Fraction(2),), (Fraction(3),))
        assert solver.lipschitz_constants(path3.dist, phi) == (Fraction(1), Fraction(2))

    def test_assignment_closes_a_negative_cycle(self, star):
        problem = decision.make_problem(star, 1, solver.branch_order(star))
        thr = decision.threshold(problem, Fraction(1))
        state = decision.assign(decision.root(problem, thr), thr, 1, 2, 0, 1)
        assert state.used == 1
        state = decision.assign(state, thr, 1, 3, 0, 1)
        assert state is not None
        # y and z both sit 2 below x, so they cannot be 2 apart
        assert decision.assign(state, thr, 2, 3, 0, 1) is None
        assert decision.assign(state, thr, 3, 2, 0, 1) is None

    def test_wider_threshold_admits_the_same_steps(self, star):
        problem = decision.make_problem(star, 1, solver.branch_order(star))
        thr = decision.threshold(problem, Fraction(3))
        state = decision.root(problem, thr)
        for x, y in ((1, 2), (1, 3), (3, 2)):
            state = decision.assign(state, thr, x, y, 0, 1)
            assert state is not None

    def test_star_threshold_is_sharp(self, star):
        problem = decision.make_problem(star, 1, solver.branch_order(star))
        at = decision.decide(problem, decision.threshold(problem, Fraction(3)), 20000)
        below = decision.decide(problem, decision.threshold(problem, Fraction(3), strict=True), 20000)
        assert at.pattern is not None and at.complete
        assert below.pattern is None and below.complete
        assert len(at.pattern) == 6

    def test_distortion_below_one_is_refuted_at_the_root(self, star):
        problem = decision.make_problem(star, 2, solver.branch_order(star))
        thr = decision.threshold(problem, Fraction(1, 2))
        assert not thr.fresh_ok
        outcome = decision.decide(problem, thr, 10)
        assert outcome.pattern is None and outcome.complete
        assert outcome.stats.pruned == 1

    def test_wide_denominators_switch_to_exact_integers(self, star):
        problem = decision.make_problem(star, 1, solver.branch_order(star))
        plain = decision.threshold(problem, Fraction(3))
        wide = decision.threshold(problem, Fraction(10 ** 9 + 7, 10 ** 9), strict=True)
        assert plain.lipschitz.dtype == np.int64
        assert wide.lipschitz.dtype == object

    def test_strict_weights_stay_below_the_plain_ones(self, star):
        problem = decision.make_problem(star, 1, solver.branch_order(star))
        strict = decision.threshold(problem, Fraction(2), strict=True)
        # lipschitz per unit of separation sits just under D
        ratio = Fraction(int(strict.lipschitz[0, 1]), int(strict.separation[0, 1]))
        assert Fraction(3, 2) < ratio < 2


@pytest.mark.solver
class TestPackingBound:
    """test the ball packing lower bound"""

    def test_star(self, star):
        assert certificates.packing_lower_bound(star, 1) == 2
        assert certificates.packing_lower_bound(star, 2) == 1

    def test_line(self, path3):
        assert certificates.packing_lower_bound(path3, 1) == 1

    def test_level_of_three(self):
        m = spaces.build_graph(GraphSpec((3,)))
        assert certificates.packing_lower_bound(m, 2) == 2

    def test_bound_holds_on_random_metrics(self):
        for seed in range(1, 5):
            m = spaces.random_graph_metric(seed, 5)
            for n in (1, 2):
                assert certificates.packing_lower_bound(m, n) <= solver.exhaustive_min_distortion(m, n)

    def test_rejects_zero_dimensions(self, star):
        with pytest.raises(DomainError):
            certificates.packing_lower_bound(star, 0)


@pytest.mark.solver
class TestOracleAndCurve:
    """test the exhaustive oracle and curve output"""

    def test_oracle_on_star(self, star):
        assert solver.exhaustive_min_distortion(star, 1) == 3
        assert solver.exhaustive_min_distortion(star, 1, method="simplex") == 3

    def test_curve(self, star, tmp_path):
        rows = solver.distortion_curve(star, [1, 3], budget=20000, threads=1)
        assert [(n, r.upper) for n, r in rows] == [(1, 3), (3, 1)]
        text = solver.curve_csv(rows)
        assert text.splitlines() == ["n,D_min_num,D_min_den", "1,3,1", "3,1,1"]
        target = tmp_path / "curve.csv"
        solver.write_curve(rows, target)
        assert target.read_text() == text

    def test_curve_is_sorted_and_seeded(self, star):
        rows = solver.distortion_curve(star, [2, 1], budget=20000, threads=1)
        assert [n for n, _ in rows] == [1, 2]
        assert rows[1][1].upper <= rows[0][1].upper
