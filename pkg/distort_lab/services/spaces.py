"""
finite metric spaces of the workbench

build_graph produces the 3-level graphs M(A_0^top, A_1^n_1, ..., A_h^n_h) with
their shortest-path metric; sup_amalgam glues spaces over a shared set; the
family builders unfold the tree recursion with a global truncation width
"""
import itertools
import logging
import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from distort_lab.models.metric_space import BASEPOINT, GraphSpec, MetricSpace
from distort_lab.models.ordinal import Ordinal, fundamental_sequence, predecessor, successor
from distort_lab.models.results import MetricReport, Violation
from distort_lab.models.tree import TreePath, TreeSpec, check_path
from distort_lab.services import trees
from distort_lab.utils.exceptions import (
    AmalgamAssumptionError,
    DomainError,
    NotInTreeError,
    SizeCapExceededError,
    StageMismatchError,
)
from distort_lab.utils.rationals import scale_to_integers

logger = logging.getLogger(__name__)


# labels

def top_labels(top_size: int = 2) -> List[str]:
    return [str(k) for k in range(1, top_size + 1)]


def level_labels(level: int, size: int) -> List[str]:
    return [f"a{level}_{j}" for j in range(1, size + 1)]


def third_level_label(members: Sequence[str]) -> str:
    return "{" + ",".join(members) + "}"


def third_level_members(label: str) -> Tuple[str, ...]:
    return tuple(label[1:-1].split(","))


def is_third_level(label: str) -> bool:
    return label.startswith("{")


def shared_labels_for(path: TreePath, top_size: int = 2) -> List[str]:
    """{bot} u A_0^top u A_1^n_1 u ... u A_h^n_h"""
    labels = [BASEPOINT] + top_labels(top_size)
    for level, size in enumerate(path, start=1):
        labels += level_labels(level, size)
    return labels


def component_label(index: int, label: str, shared: Sequence[str]) -> str:
    """label of a component point inside an amalgam (index is 0-based)"""
    return label if label in shared else f"{index + 1}:{label}"


def _check_cap(points: int, size_cap: Optional[int], what: str, **context):
    if size_cap is not None and points > size_cap:
        report = {"what": what, "points": points, "size_cap": size_cap, **context}
        logger.warning("size cap exceeded", extra=report)
        raise SizeCapExceededError(f"{what} needs {points} points, cap is {size_cap}", report=report)


# 3-level graphs

def build_graph(spec: GraphSpec, size_cap: Optional[int] = None) -> MetricSpace:
    """shortest-path metric of the 3-level graph"""
    _check_cap(spec.point_count, size_cap, "graph", sizes=list(spec.sizes))

    levels = [top_labels(spec.top_size)] + [
        level_labels(i, n) for i, n in enumerate(spec.sizes, start=1)
    ]
    second = [label for level in levels for label in level]
    third = {third_level_label(choice): choice for choice in itertools.product(*levels)}

    graph = nx.Graph()
    graph.add_node(BASEPOINT)
    graph.add_edges_from((BASEPOINT, c) for c in second)
    for label, members in third.items():
        graph.add_edges_from((c, label) for c in members)

    labels = [BASEPOINT] + second + list(third)
    lengths = dict(nx.all_pairs_shortest_path_length(graph))
    rows = [[lengths[x][y] for y in labels] for x in labels]
    logger.debug("graph built", extra={"sizes": list(spec.sizes), "points": len(labels)})
    return MetricSpace.from_rows(labels, rows, BASEPOINT, [BASEPOINT] + second)


def graph_levels(m: MetricSpace) -> Tuple[List[str], List[List[str]], List[str]]:
    """recover (top labels, extra levels, third-level labels) of a graph space"""
    top = [label for label in m.labels if label.isdigit()]
    extra: Dict[int, List[str]] = {}
    for label in m.labels:
        if label.startswith("a") and "_" in label:
            level = int(label[1:label.index("_")])
            extra.setdefault(level, []).append(label)
    third = [label for label in m.labels if is_third_level(label)]
    if "1" not in top or "2" not in top or not third:
        raise DomainError("not a 3-level graph space: needs points 1, 2 and a third level")
    return top, [extra[k] for k in sorted(extra)], third


# sup-amalgams

def validate_amalgam(components: Sequence[MetricSpace], shared: Sequence[str]) -> None:
    """raise unless the components share the labels, agree on them and keep them within 1 of bot"""
    if not components:
        raise AmalgamAssumptionError("an amalgam needs at least one component")
    if BASEPOINT not in shared:
        raise AmalgamAssumptionError("the shared set must contain the basepoint")
    reference = components[0]
    for k, comp in enumerate(components, start=1):
        missing = [a for a in shared if a not in comp.position]
        if missing:
            raise AmalgamAssumptionError(f"component {k} lacks shared points {missing}")
        if comp.basepoint_label != BASEPOINT:
            raise AmalgamAssumptionError(f"component {k} has basepoint {comp.basepoint_label!r}")
        if comp.size > 1 and comp.min_distance < 1:
            raise AmalgamAssumptionError(f"component {k} has distinct points closer than 1")
        for a in shared:
            if comp.d(a, BASEPOINT) > 1:
                raise AmalgamAssumptionError(f"component {k}: shared point {a} is farther than 1 from bot")
        for a, b in itertools.combinations(shared, 2):
            if comp.d(a, b) != reference.d(a, b):
                raise AmalgamAssumptionError(
                    f"components 1 and {k} disagree on d({a},{b}): {reference.d(a, b)} vs {comp.d(a, b)}"
                )


def sup_amalgam(
    components: Sequence[MetricSpace],
    shared: Sequence[str],
    size_cap: Optional[int] = None,
) -> MetricSpace:
    """
    glue components over the shared set inside their sup-product

    points are the shared ones (in the order of the first component) followed
    by every component's own points tagged "k:"
    """
    validate_amalgam(components, shared)
    shared_set = set(shared)
    shared_order = [label for label in components[0].labels if label in shared_set]
    origin: List[Tuple[Optional[int], str]] = [(None, a) for a in shared_order]
    for k, comp in enumerate(components):
        origin += [(k, label) for label in comp.labels if label not in shared_set]
    _check_cap(len(origin), size_cap, "amalgam", components=len(components))

    reference = components[0]
    height = [
        {label: comp.d(label, BASEPOINT) for label in comp.labels} for comp in components
    ]
    n = len(origin)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for p in range(n):
        cp, lp = origin[p]
        for q in range(p + 1, n):
            cq, lq = origin[q]
            if cp is None and cq is None:
                value = reference.d(lp, lq)
            elif cp is None or cq is None or cp == cq:
                value = components[cq if cp is None else cp].d(lp, lq)
            else:
                value = max(height[cp][lp], height[cq][lq])
            rows[p][q] = rows[q][p] = value

    labels = [a if k is None else component_label(k, a, shared_set) for k, a in origin]
    return MetricSpace.from_rows(labels, rows, BASEPOINT, shared_order)


# the staged family

def _require_node(spec: TreeSpec, path: TreePath):
    if path and not trees.contains(spec, path):
        raise NotInTreeError(f"{list(path)} is not in T_{{{successor(spec.alpha)}}}")


def _is_leaf(spec: TreeSpec, path: TreePath) -> bool:
    return bool(path) and trees.level_spec(spec, path).alpha.is_zero


def predicted_size(spec: TreeSpec, path: TreePath, width: int, top_size: int = 2, limit: Optional[int] = None) -> int:
    """points of the truncated family space; stops counting once above limit"""
    if _is_leaf(spec, path):
        return GraphSpec(path, top_size).point_count
    shared = len(shared_labels_for(path, top_size))
    total = shared
    for k in range(1, width + 1):
        total += predicted_size(spec, path + (k,), width, top_size, limit) - shared
        if limit is not None and total > limit:
            return total
    return total


def check_stage(spec: TreeSpec, path: TreePath, stage: Ordinal) -> None:
    """a node has the stable space at every stage where it is maximal"""
    if not path:
        low = high = successor(spec.alpha)
    else:
        low, high = trees.rank(spec, path), trees.survival(spec, path)
    if not low <= stage <= high:
        raise StageMismatchError(
            f"{list(path)} is maximal only at stages {low}..{high}, not at {stage}"
        )


@lru_cache(maxsize=512)
def _node_space(spec: TreeSpec, path: TreePath, width: int, top_size: int) -> MetricSpace:
    if _is_leaf(spec, path):
        return build_graph(GraphSpec(path, top_size))
    children = [_node_space(spec, path + (k,), width, top_size) for k in range(1, width + 1)]
    return sup_amalgam(children, shared_labels_for(path, top_size))


def family_space(
    mu: Ordinal,
    path: TreePath,
    width: int,
    stage: Optional[Ordinal] = None,
    top_size: int = 2,
    size_cap: Optional[int] = None,
) -> MetricSpace:
    """
    width-truncated space of the family over the tree T_{mu+1} at node path

    this is the stable space the node carries from its rank up to its
    survival stage; the empty path gives the top space M^{mu+1}
    """
    if width < 1:
        raise DomainError(f"width must be positive, got {width}")
    spec = TreeSpec(mu)
    path = check_path(path)
    _require_node(spec, path)
    if stage is not None:
        check_stage(spec, path, stage)
    if size_cap is not None:
        points = predicted_size(spec, path, width, top_size, limit=size_cap)
        _check_cap(points, size_cap, "family space", mu=str(mu), path=list(path), width=width)
    return _node_space(spec, path, width, top_size)


def height_witness_space(
    alpha: Ordinal,
    width: int,
    top_size: int = 2,
    size_cap: Optional[int] = None,
) -> MetricSpace:
    """
    the space certifying height alpha >= 1

    successor alpha = mu+1 gives the top family space over T_{mu+1}; a limit
    glues the top spaces over T_{alpha[n]+1} for n <= width over {bot} u A_0
    """
    if alpha.is_zero:
        raise DomainError("height witnesses need alpha >= 1")
    if alpha.is_successor:
        return family_space(predecessor(alpha), (), width, top_size=top_size, size_cap=size_cap)
    parts = [
        family_space(fundamental_sequence(alpha, n), (), width, top_size=top_size, size_cap=size_cap)
        for n in range(1, width + 1)
    ]
    return sup_amalgam(parts, shared_labels_for((), top_size), size_cap=size_cap)


def byproduct_space(alpha: Ordinal, k: int, width: int, size_cap: Optional[int] = None) -> MetricSpace:
    """height witness with the top alphabet enlarged to A_0^k"""
    return height_witness_space(alpha, width, top_size=k, size_cap=size_cap)


# validation

def validate_metric(m: MetricSpace, max_violations: int = 50) -> MetricReport:
    """exhaustive check of the metric axioms, uniform discreteness and d(a, bot) <= 1 on the shared set"""
    violations: List[Violation] = []
    labels = m.labels
    n = m.size

    def note(kind: str, points: Tuple[str, ...], detail: str):
        violations.append(Violation(kind, points, detail))

    for i in range(n):
        if m.dist[i][i] != 0:
            note("diagonal", (labels[i],), f"d(x,x) = {m.dist[i][i]}")
        for j in range(i + 1, n):
            dij, dji = m.dist[i][j], m.dist[j][i]
            if dij != dji:
                note("symmetry", (labels[i], labels[j]), f"{dij} != {dji}")
            if dij < 1:
                note("discreteness", (labels[i], labels[j]), f"distance {dij} < 1")
    for i in sorted(m.shared):
        if m.dist[i][m.basepoint] > 1:
            note("shared_height", (labels[i],), f"d(a,bot) = {m.dist[i][m.basepoint]} > 1")

    (table,), _ = scale_to_integers(m.dist)
    for y in range(n):
        # d(x,z) > d(x,y) + d(y,z)
        bad = np.argwhere(table > table[:, y][:, None] + table[y, :][None, :])
        for x, z in bad[: max_violations]:
            note(
                "triangle",
                (labels[x], labels[y], labels[z]),
                f"{m.dist[x][z]} > {m.dist[x][y]} + {m.dist[y][z]}",
            )
        if len(violations) > max_violations:
            break

    truncated = len(violations) > max_violations
    report = MetricReport(not violations, n, tuple(violations[:max_violations]), truncated)
    logger.info(
        "metric validated",
        extra={"points": n, "passed": report.passed, "violations": len(report.violations)},
    )
    return report


def random_graph_metric(seed: int, points: int, edge_probability: float = 0.4, max_weight: int = 3) -> MetricSpace:
    """shortest-path metric of a random connected graph with integer weights >= 1"""
    if points < 2:
        raise DomainError("random metrics need at least 2 points")
    rng = random.Random(seed)
    labels = [BASEPOINT] + [f"p{k}" for k in range(1, points)]
    graph = nx.gnp_random_graph(points, edge_probability, seed=seed)
    # a spanning path keeps the graph connected
    graph.add_edges_from((k, k + 1) for k in range(points - 1))
    for u, v in graph.edges:
        graph.edges[u, v]["weight"] = rng.randint(1, max_weight)
    lengths = dict(nx.all_pairs_dijkstra_path_length(graph))
    rows = [[lengths[x][y] for y in range(points)] for x in range(points)]
    return MetricSpace.from_rows(labels, rows, BASEPOINT)
