"""
linear relaxation of a branch-and-bound node

with the pair assignments fixed, minimizing D decouples per coordinate into
difference constraints  phi(x) - phi(y) <= D d(x,y)  plus  s (phi(x) - phi(y)) >= d(x,y)
for every pair assigned (coordinate, s). the optimum is the largest cycle
ratio of the constraint graph, found by iterating negative-cycle detection
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from distort_lab.services.simplex import OPTIMAL, solve_lp

# (x, y, sign): sign * (phi(x) - phi(y)) >= d(x, y)
Assignment = Tuple[int, int, int]
Matrix = Sequence[Sequence[Fraction]]

CYCLES = "cycles"
SIMPLEX = "simplex"


@dataclass(frozen=True)
class Relaxation:
    feasible: bool
    value: Fraction = Fraction(0)
    phi: Tuple[Tuple[Fraction, ...], ...] = ()


def _edges(dist: Matrix, assigned: Sequence[Assignment]):
    """edge (u, v, a, c) encodes phi(v) <= phi(u) + a*D + c"""
    n = len(dist)
    edges = [(y, x, dist[x][y], Fraction(0)) for x in range(n) for y in range(n) if x != y]
    for x, y, sign in assigned:
        if sign > 0:
            edges.append((x, y, Fraction(0), -dist[x][y]))
        else:
            edges.append((y, x, Fraction(0), -dist[x][y]))
    return edges


def _negative_cycle(n: int, edges, D: Fraction):
    """bellman-ford from a virtual source; returns (potentials, None) or (None, cycle edges)"""
    potential = [Fraction(0)] * n
    pred: List[Optional[tuple]] = [None] * n
    last = None
    for _ in range(n):
        last = None
        for edge in edges:
            u, v, a, c = edge
            candidate = potential[u] + a * D + c
            if candidate < potential[v]:
                potential[v] = candidate
                pred[v] = edge
                last = v
        if last is None:
            return potential, None
    # walk back into the cycle, then collect it
    x = last
    for _ in range(n):
        x = pred[x][0]
    cycle, cur = [], x
    while True:
        edge = pred[cur]
        cycle.append(edge)
        cur = edge[0]
        if cur == x:
            return None, cycle


def coordinate_by_cycles(dist: Matrix, basepoint: int, assigned: Sequence[Assignment]) -> Optional[Tuple[Fraction, List[Fraction]]]:
    """exact (D*, phi) for one coordinate, or None when no D works"""
    n = len(dist)
    if not assigned:
        return Fraction(0), [Fraction(0)] * n
    edges = _edges(dist, assigned)
    # any assigned pair already forces D >= 1
    D = Fraction(1)
    while True:
        potential, cycle = _negative_cycle(n, edges, D)
        if cycle is None:
            shift = potential[basepoint]
            return D, [p - shift for p in potential]
        slope = sum(edge[2] for edge in cycle)
        offset = sum(edge[3] for edge in cycle)
        if slope == 0:
            return None
        D = -offset / slope


def coordinate_by_simplex(dist: Matrix, basepoint: int, assigned: Sequence[Assignment]) -> Optional[Tuple[Fraction, List[Fraction]]]:
    """
    same relaxation through the exact simplex

    phi is free, so the lp works with u(x) = phi(x) + D d(bot, x) >= 0
    """
    n = len(dist)
    if not assigned:
        return Fraction(0), [Fraction(0)] * n
    others = [x for x in range(n) if x != basepoint]
    column: Dict[int, int] = {x: k for k, x in enumerate(others)}
    d_col = len(others)
    height = [dist[basepoint][x] for x in range(n)]

    def row(coeffs: Dict[int, Fraction], d_coeff: Fraction) -> List[Fraction]:
        out = [Fraction(0)] * (d_col + 1)
        for x, v in coeffs.items():
            if x != basepoint:
                out[column[x]] += v
        out[d_col] = d_coeff
        return out

    A, b = [], []
    for x in range(n):
        for y in range(n):
            if x != y:
                A.append(row({x: Fraction(1), y: Fraction(-1)}, -height[x] + height[y] - dist[x][y]))
                b.append(Fraction(0))
    for x, y, sign in assigned:
        s = Fraction(sign)
        A.append(row({x: -s, y: s}, s * (height[x] - height[y])))
        b.append(-dist[x][y])
    cost = [Fraction(0)] * d_col + [Fraction(1)]
    result = solve_lp(cost, A, b)
    if result.status != OPTIMAL:
        return None
    D = result.x[d_col]
    phi = [Fraction(0) if x == basepoint else result.x[column[x]] - D * height[x] for x in range(n)]
    return D, phi


SOLVERS = {CYCLES: coordinate_by_cycles, SIMPLEX: coordinate_by_simplex}


def relax(dist: Matrix, basepoint: int, dims: int, node: Sequence[Tuple[int, int, int, int]], method: str = CYCLES) -> Relaxation:
    """node entries are (x, y, coordinate, sign)"""
    solver = SOLVERS[method]
    per_coordinate: List[List[Assignment]] = [[] for _ in range(dims)]
    for x, y, j, sign in node:
        per_coordinate[j].append((x, y, sign))
    value = Fraction(0)
    columns = []
    for assigned in per_coordinate:
        solved = solver(dist, basepoint, assigned)
        if solved is None:
            return Relaxation(False)
        D, phi = solved
        value = max(value, D)
        columns.append(phi)
    phi_rows = tuple(tuple(col[x] for col in columns) for x in range(len(dist)))
    return Relaxation(True, value, phi_rows)
