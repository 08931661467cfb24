from fractions import Fraction

import pytest

from distort_lab.services.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp

F = Fraction


@pytest.mark.unit
@pytest.mark.solver
class TestSimplex:
    """test the exact two-phase simplex"""

    def test_bounded_maximum(self):
        result = solve_lp([F(-1), F(-1)], [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]], [F(2), F(3), F(4)])
        assert result.status == OPTIMAL
        assert result.value == -4
        assert sum(result.x) == 4

    def test_negative_right_hand_side(self):
        """test phase one finds a start when the origin is infeasible"""
        result = solve_lp([F(1), F(1)], [[F(-1), F(0)], [F(0), F(-1)]], [F(-1, 2), F(-1, 3)])
        assert result.status == OPTIMAL
        assert result.value == F(5, 6)
        assert result.x == [F(1, 2), F(1, 3)]

    def test_infeasible(self):
        assert solve_lp([F(1)], [[F(1)]], [F(-1)]).status == INFEASIBLE

    def test_unbounded(self):
        assert solve_lp([F(-1)], [[F(-1)]], [F(0)]).status == UNBOUNDED

    def test_no_constraints(self):
        assert solve_lp([F(1), F(2)], [], []).value == 0
        assert solve_lp([F(-1)], [], []).status == UNBOUNDED

    def test_degenerate_problem_terminates(self):
        """test bland's rule on a classic cycling example"""
        c = [F(-10), F(57), F(9), F(24)]
        A = [
            [F(1, 2), F(-11, 2), F(-5, 2), F(9)],
            [F(1, 2), F(-3, 2), F(-1, 2), F(1)],
            [F(1), F(0), F(0), F(0)],
        ]
        result = solve_lp(c, A, [F(0), F(0), F(1)])
        assert result.status == OPTIMAL
        assert result.value == -1
