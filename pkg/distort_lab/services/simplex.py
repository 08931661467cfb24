"""
exact two-phase tableau simplex over fractions with bland's rule

solves  min c.x  subject to  A_ub x <= b_ub,  x >= 0
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[List[Fraction]] = None


class Tableau:
    """full tableau; rows[i][-1] is the right-hand side of basic variable basis[i]"""

    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        self.rows = rows
        self.basis = basis

    @property
    def width(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        piv = row[j]
        self.rows[i] = row = [v / piv for v in row]
        for k, other in enumerate(self.rows):
            if k != i and other[j] != 0:
                f = other[j]
                self.rows[k] = [a - f * b for a, b in zip(other, row)]
        self.basis[i] = j

    def reduced_costs(self, cost: Sequence[Fraction], columns: int) -> List[Fraction]:
        return [
            cost[j] - sum(cost[b] * row[j] for b, row in zip(self.basis, self.rows))
            for j in range(columns)
        ]

    def bland_step(self, cost: Sequence[Fraction], columns: int) -> str:
        reduced = self.reduced_costs(cost, columns)
        entering = next((j for j in range(columns) if reduced[j] < 0), None)
        if entering is None:
            return OPTIMAL
        candidates = [
            (row[-1] / row[entering], self.basis[i], i)
            for i, row in enumerate(self.rows)
            if row[entering] > 0
        ]
        if not candidates:
            return UNBOUNDED
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return "go_on"

    def run(self, cost: Sequence[Fraction], columns: int) -> str:
        while True:
            status = self.bland_step(cost, columns)
            if status != "go_on":
                return status

    def objective(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * row[-1] for b, row in zip(self.basis, self.rows)), Fraction(0))


def solve_lp(c: Sequence, A_ub: Sequence[Sequence], b_ub: Sequence) -> LPResult:
    n, m = len(c), len(A_ub)
    if m == 0:
        # x = 0 is optimal unless some cost is negative
        if any(Fraction(v) < 0 for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), [Fraction(0)] * n)

    negative = [i for i in range(m) if Fraction(b_ub[i]) < 0]
    width = n + m + len(negative)
    rows: List[List[Fraction]] = []
    basis: List[int] = []
    artificial = {}
    for i in range(m):
        row = [Fraction(v) for v in A_ub[i]] + [Fraction(0)] * (m + len(negative))
        row[n + i] = Fraction(1)
        rhs = Fraction(b_ub[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            col = n + m + len(artificial)
            artificial[col] = i
            row[col] = Fraction(1)
            basis.append(col)
        else:
            basis.append(n + i)
        rows.append(row + [rhs])
    tableau = Tableau(rows, basis)

    if artificial:
        phase_one = [Fraction(0)] * width
        for col in artificial:
            phase_one[col] = Fraction(1)
        tableau.run(phase_one, width)
        if tableau.objective(phase_one) > 0:
            return LPResult(INFEASIBLE)
        # drive remaining artificials out of the basis; rows that cannot be are redundant
        keep = []
        for i, col in enumerate(tableau.basis):
            if col in artificial:
                j = next((j for j in range(n + m) if tableau.rows[i][j] != 0), None)
                if j is None:
                    continue
                tableau.pivot(i, j)
            keep.append(i)
        tableau.rows = [tableau.rows[i][: n + m] + [tableau.rows[i][-1]] for i in keep]
        tableau.basis = [tableau.basis[i] for i in keep]

    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    if tableau.run(cost, n + m) == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for col, row in zip(tableau.basis, tableau.rows):
        if col < n:
            x[col] = row[-1]
    return LPResult(OPTIMAL, tableau.objective(cost), x)
