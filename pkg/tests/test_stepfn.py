from fractions import Fraction

import pytest

from distort_lab.models.embedding import MatrixEmbedding, StepEmbedding
from distort_lab.models.metric_space import BASEPOINT, MetricSpace
from distort_lab.models.ordinal import OMEGA, ONE, ZERO, Ordinal, mul_nat
from distort_lab.models.step_function import StepFunction
from distort_lab.services import stepfn
from distort_lab.services.embed import embed_finite, frechet_embedding
from distort_lab.utils.exceptions import DomainError

BOUND = mul_nat(OMEGA, 2)


@pytest.fixture
def f_a():
    """1 on [0, w], -1 on (w, w*2]"""
    return StepFunction(BOUND, (OMEGA, BOUND), (Fraction(1), Fraction(-1)))


@pytest.fixture
def f_b():
    return StepFunction.constant(BOUND, -1)


@pytest.fixture
def pair_embedding(f_a, f_b):
    m = MetricSpace.from_rows([BASEPOINT, "a", "b"], [[0, 1, 1], [1, 0, 2], [1, 2, 0]])
    return StepEmbedding(m, BOUND, (StepFunction.constant(BOUND, 0), f_a, f_b), normalized=True)


@pytest.mark.unit
@pytest.mark.stepfn
class TestStepFunctions:
    """test evaluation and canonical forms"""

    def test_evaluate(self, f_a):
        assert stepfn.evaluate(f_a, ZERO) == 1
        assert stepfn.evaluate(f_a, OMEGA) == 1
        assert stepfn.evaluate(f_a, OMEGA + ONE) == -1
        assert stepfn.evaluate(f_a, BOUND) == -1

    def test_evaluate_outside(self, f_a):
        with pytest.raises(DomainError):
            stepfn.evaluate(f_a, mul_nat(OMEGA, 3))

    def test_build_merges_equal_neighbours(self):
        f = StepFunction.build(BOUND, [OMEGA, BOUND], [1, 1])
        assert f.cuts == (BOUND,)
        assert f.values == (Fraction(1),)

    def test_last_cut_is_bound(self):
        with pytest.raises(DomainError):
            StepFunction(BOUND, (OMEGA,), (Fraction(1),))

    def test_common_cuts(self, f_a, f_b):
        assert stepfn.common_cuts([f_a, f_b]) == [OMEGA, BOUND]

    def test_common_cuts_mismatched_bounds(self, f_a):
        with pytest.raises(DomainError):
            stepfn.common_cuts([f_a, StepFunction.constant(OMEGA, 0)])

    def test_sup_distance(self, f_a, f_b):
        assert stepfn.sup_distance(f_a, f_b) == 2
        assert f_a.sup_norm == 1


@pytest.mark.unit
@pytest.mark.stepfn
class TestWitnessRegions:
    """test the sets where two images are far apart"""

    def test_region(self, f_a, f_b):
        region = stepfn.witness_region(f_a, f_b, Fraction(1))
        assert str(region) == "{0} u (0, w]"
        assert region.contains(Ordinal.nat(5))
        assert not region.contains(OMEGA + ONE)

    def test_region_grows_with_D(self, f_a, f_b):
        """test threshold 1/2 still leaves out the piece where the images agree"""
        region = stepfn.witness_region(f_a, f_b, Fraction(7, 4))
        assert region.contains(OMEGA) and not region.contains(BOUND)

    @pytest.mark.parametrize("D", [Fraction(2), Fraction(1, 2)])
    def test_D_out_of_range(self, f_a, f_b, D):
        with pytest.raises(DomainError):
            stepfn.witness_region(f_a, f_b, D)

    def test_report_counts(self, pair_embedding):
        """test [0, w] has w + 1 points and a single limit point"""
        report = stepfn.witness_report(pair_embedding, [("a", "b")], Fraction(1), [ZERO, ONE], 64)
        assert report.count(ZERO) == 64
        assert report.count(ONE) == 1
        assert report.threshold == 2

    def test_report_unknown_label(self, pair_embedding):
        with pytest.raises(DomainError):
            stepfn.witness_report(pair_embedding, [("a", "zz")], Fraction(1), [ZERO], 8)


@pytest.mark.unit
@pytest.mark.stepfn
class TestDistortionMeasurement:
    """test exact lipschitz constants of embeddings"""

    def test_pair_embedding_is_isometric(self, pair_embedding):
        assert stepfn.embedding_distortion(pair_embedding) == (1, 1)
        assert stepfn.first_non_isometric_pair(pair_embedding) is None

    def test_frechet_is_isometric(self, star):
        e = stepfn.matrix_to_step(frechet_embedding(star))
        assert e.normalized
        assert stepfn.embedding_distortion(e) == (1, 1)

    def test_scaled_embedding(self, star):
        e = frechet_embedding(star)
        doubled = MatrixEmbedding(star, e.coordinates, tuple(tuple(2 * v for v in row) for row in e.entries))
        step = stepfn.matrix_to_step(doubled)
        assert stepfn.embedding_distortion(step) == (2, 2)
        assert stepfn.first_non_isometric_pair(step) == (BASEPOINT, "x")

    def test_matrix_to_step_uses_coordinate_ordinals(self, star):
        step = stepfn.matrix_to_step(frechet_embedding(star))
        assert step.bound == Ordinal.nat(3)
        assert stepfn.evaluate(step.image("x"), Ordinal.nat(1)) == frechet_embedding(star).row("x")[1]

    def test_pairwise_table(self, pair_embedding):
        table = stepfn.pairwise_sup_distances(pair_embedding)
        assert table[1][2] == 2
        assert table[0][1] == 1


@pytest.mark.stepfn
class TestWitnessRegionsOnMatrices:
    """test witness reports on coordinate embeddings against the value matrix"""

    @pytest.mark.parametrize(
        "D, pairs",
        [
            (Fraction(1), [("1", "2")]),
            (Fraction(3, 2), [("1", "2"), ("a1_1", "a1_2")]),
            (Fraction(6, 5), [("a2_1", "a2_3"), ("a1_2", "a1_1")]),
        ],
    )
    def test_region_is_the_separating_coordinates(self, graph_23, D, pairs):
        e = embed_finite(graph_23)
        threshold = 4 - 2 * D
        expected = [
            j for j in range(e.dims)
            if all(abs(e.row(a)[j] - e.row(b)[j]) >= threshold for a, b in pairs)
        ]
        report = stepfn.witness_report(stepfn.matrix_to_step(e), pairs, D, [ZERO, ONE], e.dims + 1)
        assert [j for j in range(e.dims) if report.region.contains(Ordinal.nat(j))] == expected
        assert report.count(ZERO) == len(expected)
        assert report.count(ONE) == 0
