from fractions import Fraction

import pytest

from distort_lab.services.subproblem import (
    CYCLES,
    SIMPLEX,
    coordinate_by_cycles,
    coordinate_by_simplex,
    relax,
)


@pytest.mark.unit
@pytest.mark.solver
class TestCoordinateRelaxation:
    """test the one-coordinate lp behind every node"""

    @pytest.mark.parametrize("solver", [coordinate_by_cycles, coordinate_by_simplex])
    def test_no_assignment(self, star, solver):
        D, phi = solver(star.dist, star.basepoint, [])
        assert D == 0
        assert phi == [0, 0, 0, 0]

    @pytest.mark.parametrize("solver", [coordinate_by_cycles, coordinate_by_simplex])
    def test_single_pair(self, star, solver):
        D, phi = solver(star.dist, star.basepoint, [(1, 0, 1)])
        assert D == 1
        assert phi[0] == 0
        assert phi[1] - phi[0] >= 1

    @pytest.mark.parametrize("solver", [coordinate_by_cycles, coordinate_by_simplex])
    def test_chain_of_leaves(self, star, solver):
        """test x > y > z on a line forces D = 2"""
        D, phi = solver(star.dist, star.basepoint, [(1, 2, 1), (2, 3, 1)])
        assert D == 2
        assert phi[1] - phi[2] >= 2 and phi[2] - phi[3] >= 2
        for i in range(4):
            for j in range(4):
                assert phi[i] - phi[j] <= D * star.dist[i][j]

    @pytest.mark.parametrize("solver", [coordinate_by_cycles, coordinate_by_simplex])
    def test_contradiction(self, star, solver):
        assert solver(star.dist, star.basepoint, [(1, 2, 1), (2, 1, 1)]) is None

    def test_methods_agree(self, graph_23):
        assigned = [(3, 4, 1), (5, 6, -1), (0, 8, 1), (1, 12, -1)]
        by_cycles = coordinate_by_cycles(graph_23.dist, graph_23.basepoint, assigned)
        by_simplex = coordinate_by_simplex(graph_23.dist, graph_23.basepoint, assigned)
        assert by_cycles[0] == by_simplex[0]

    @pytest.mark.parametrize("method", [CYCLES, SIMPLEX])
    def test_relax_takes_worst_coordinate(self, star, method):
        node = [(1, 2, 0, 1), (2, 3, 0, 1), (1, 0, 1, 1)]
        r = relax(star.dist, star.basepoint, 2, node, method)
        assert r.feasible
        assert r.value == 2
        assert len(r.phi) == 4 and len(r.phi[0]) == 2

    def test_relax_infeasible(self, star):
        r = relax(star.dist, star.basepoint, 1, [(1, 2, 0, 1), (2, 1, 0, 1)])
        assert not r.feasible
        assert r.value == Fraction(0)
