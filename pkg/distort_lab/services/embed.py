"""
explicit isometric embeddings

embed_finite sends a 3-level graph into l_inf over its third level,
embed_amalgam glues embeddings of amalgam components into step functions via
sign patterns of the shared points, and embed_family stages both along the
tree recursion of the family spaces
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from distort_lab.models.embedding import MatrixEmbedding, SignPattern, StepEmbedding
from distort_lab.models.metric_space import BASEPOINT, GraphSpec, MetricSpace
from distort_lab.models.ordinal import ZERO, Ordinal, add, mul_nat, predecessor, successor
from distort_lab.models.results import EmbeddingOutcome, FamilyEmbedding, StageRecord
from distort_lab.models.step_function import StepFunction
from distort_lab.models.tree import TreePath, TreeSpec, check_path
from distort_lab.services import spaces, trees
from distort_lab.services.stepfn import (
    common_cuts,
    first_non_isometric_pair,
    matrix_to_step,
    values_on,
)
from distort_lab.utils.exceptions import DomainError, EmbeddingVerificationError, VerificationError
from distort_lab.utils.rationals import scale_to_integers

logger = logging.getLogger(__name__)

AnyEmbedding = Union[MatrixEmbedding, StepEmbedding]


# finite graphs

def _matrix_failures(m: MetricSpace, entries: Sequence[Sequence[Fraction]], first_only: bool) -> List[Tuple[int, int]]:
    """index pairs whose sup distance differs from the metric"""
    table, dist = scale_to_integers(entries, m.dist)[0]
    failures = []
    for i in range(m.size):
        norms = np.abs(table - table[i]).max(axis=1) if table.shape[1] else np.zeros(m.size, dtype=int)
        bad = np.nonzero(norms[i + 1:] != dist[i, i + 1:])[0]
        for j in bad:
            failures.append((i, i + 1 + int(j)))
            if first_only:
                return failures
    return failures


def _check_bullets(m: MetricSpace, entries: Sequence[Sequence[Fraction]], top: List[str]) -> None:
    row = {label: entries[i] for i, label in enumerate(m.labels)}
    if any(v != 0 for v in row[BASEPOINT]):
        raise VerificationError("f(bot) must be 0")
    for i in sorted(m.shared):
        label = m.labels[i]
        if label != BASEPOINT and any(abs(v) != 1 for v in row[label]):
            raise VerificationError(f"f({label}) must take values +-1")
    if len(top) == 2:
        if any(v != 1 for v in row["1"]) or any(v != -1 for v in row["2"]):
            raise VerificationError("f(1) must be constantly 1 and f(2) constantly -1")


def _separating_coordinate(m: MetricSpace, a: str, b: str, top: List[str]) -> List[Fraction]:
    """a 1-lipschitz coordinate with values +1 at a and -1 at b"""
    sign: Dict[str, int] = {}
    for i in sorted(m.shared):
        label = m.labels[i]
        if label != BASEPOINT:
            sign[label] = 1
    sign[b] = -1
    if len(top) >= 2:
        sign["2"] = -1
    column = []
    for label in m.labels:
        if label == BASEPOINT:
            column.append(Fraction(0))
        elif label in sign:
            column.append(Fraction(sign[label]))
        else:
            member_signs = {sign[c] for c in spaces.third_level_members(label)}
            column.append(Fraction(member_signs.pop()) if len(member_signs) == 1 else Fraction(0))
    return column


def embed_finite(m: MetricSpace, supplement: bool = False) -> MatrixEmbedding:
    """
    coordinates are the third-level points b: x -> d(x,b) - d(bot,b), with the
    column negated wherever point 1 would get -1

    the map is verified exhaustively. it is not isometric when two extra
    levels are singletons (both singletons lie in every b); with supplement
    one separating coordinate per such pair is appended instead of failing
    """
    top, _, third = spaces.graph_levels(m)
    one = m.position["1"]
    columns = []
    for b in third:
        column = [m.d(x, b) - m.d(BASEPOINT, b) for x in m.labels]
        if column[one] == -1:
            column = [-v for v in column]
        columns.append(column)
    entries = [list(row) for row in zip(*columns)]
    coordinates = list(third)

    failures = _matrix_failures(m, entries, first_only=not supplement)
    repaired: List[Tuple[str, str]] = []
    if failures and not supplement:
        i, j = failures[0]
        raise EmbeddingVerificationError(
            f"coordinate map is not isometric at ({m.labels[i]}, {m.labels[j]})",
            pair=(m.labels[i], m.labels[j]),
        )
    for i, j in failures:
        a, b = m.labels[i], m.labels[j]
        if not (i in m.shared and j in m.shared):
            raise EmbeddingVerificationError(f"no separating coordinate for ({a}, {b})", pair=(a, b))
        column = _separating_coordinate(m, a, b, top)
        for row, v in zip(entries, column):
            row.append(v)
        coordinates.append(f"sep({a},{b})")
        repaired.append((a, b))
    if repaired:
        logger.warning("coordinate map supplemented", extra={"pairs": [list(p) for p in repaired]})
        again = _matrix_failures(m, entries, first_only=True)
        if again:
            i, j = again[0]
            raise EmbeddingVerificationError(
                f"supplemented map is not isometric at ({m.labels[i]}, {m.labels[j]})",
                pair=(m.labels[i], m.labels[j]),
            )

    _check_bullets(m, entries, top)
    return MatrixEmbedding(
        m,
        tuple(coordinates),
        tuple(tuple(row) for row in entries),
        tuple(repaired),
    )


def finite_embedding_outcomes(max_levels: int, max_size: int) -> List[EmbeddingOutcome]:
    """whether the plain coordinate map is isometric, per size vector"""
    outcomes = []
    for h in range(0, max_levels + 1):
        for sizes in itertools.product(range(1, max_size + 1), repeat=h):
            m = spaces.build_graph(GraphSpec(sizes))
            try:
                embed_finite(m)
                outcomes.append(EmbeddingOutcome(sizes, True))
            except EmbeddingVerificationError as exc:
                outcomes.append(EmbeddingOutcome(sizes, False, exc.pair))
    return outcomes


# sup-amalgams

def as_step(e: AnyEmbedding) -> StepEmbedding:
    return matrix_to_step(e) if isinstance(e, MatrixEmbedding) else e


def _shift(f: StepFunction, offset: Ordinal) -> Tuple[List[Ordinal], List[Fraction]]:
    return [add(offset, c) for c in f.cuts], list(f.values)


def _check_part(k: int, e: StepEmbedding, shared: Sequence[str]) -> None:
    if not e.image(BASEPOINT).is_zero:
        raise DomainError(f"part {k} does not send bot to 0")
    for a in shared:
        if a != BASEPOINT and any(abs(v) != 1 for v in e.image(a).values):
            raise DomainError(f"part {k} does not send {a} to a +-1 valued function")


def embed_amalgam(parts: Sequence[AnyEmbedding], shared: Sequence[str]) -> StepEmbedding:
    """
    isometric embedding of the sup-amalgam of the parts' domains

    the parts are concatenated block by block into g on [0, S]; every sign
    pattern the shared points realize on [0, S] gets its own copy of [0, S],
    where shared points are constant and the other points follow g on the
    pattern's pieces and vanish elsewhere
    """
    steps = [as_step(p) for p in parts]
    for k, e in enumerate(steps, start=1):
        _check_part(k, e, shared)
    domain = spaces.sup_amalgam([e.domain for e in steps], shared)
    shared_set = set(shared)
    a_star = [a for a in domain.labels if a in shared_set and a != BASEPOINT]

    # block concatenation
    offsets, offset = [], ZERO
    for e in steps:
        offsets.append(offset)
        offset = add(offset, successor(e.bound))
    total = predecessor(offset)

    concat: Dict[str, Tuple[List[Ordinal], List[Fraction]]] = {}
    for label in domain.labels:
        cuts: List[Ordinal] = []
        values: List[Fraction] = []
        for k, (e, start) in enumerate(zip(steps, offsets)):
            if label in shared_set:
                own = e.image(label)
            else:
                owner = int(label.split(":", 1)[0]) - 1
                own = e.image(label.split(":", 1)[1]) if owner == k else StepFunction.constant(e.bound, 0)
            c, v = _shift(own, start)
            cuts += c
            values += v
        concat[label] = (cuts, values)
    g = {label: StepFunction.build(total, c, v) for label, (c, v) in concat.items()}

    # realized sign patterns of the shared points
    pattern_cuts = common_cuts([g[a] for a in a_star]) if a_star else [total]
    pattern_rows = [values_on(g[a], pattern_cuts) for a in a_star]
    piece_patterns = [tuple(int(row[p]) for row in pattern_rows) for p in range(len(pattern_cuts))]
    realized = sorted(set(piece_patterns), reverse=True)
    patterns = tuple(SignPattern(tuple(a_star), eps) for eps in realized)
    count = len(patterns)

    period = successor(total)
    copy_offsets = [ZERO] + [mul_nat(period, e) for e in range(1, count)]
    bound = predecessor(mul_nat(period, count))

    # piece index of the pattern refinement, as a step function
    piece_index = StepFunction(total, tuple(pattern_cuts), tuple(Fraction(p) for p in range(len(pattern_cuts))))

    maps = []
    for label in domain.labels:
        if label in shared_set:
            local = None
        else:
            local_cuts = common_cuts([g[label], piece_index])
            local = (local_cuts, values_on(g[label], local_cuts), values_on(piece_index, local_cuts))
        cuts: List[Ordinal] = []
        values: List[Fraction] = []
        for eps, start in zip(realized, copy_offsets):
            if label == BASEPOINT:
                local_cuts, local_values = [total], [Fraction(0)]
            elif local is None:
                local_cuts, local_values = [total], [Fraction(eps[a_star.index(label)])]
            else:
                local_cuts, own, where = local
                local_values = [v if piece_patterns[int(p)] == eps else Fraction(0) for v, p in zip(own, where)]
            cuts += [add(start, c) for c in local_cuts]
            values += local_values
        maps.append(StepFunction.build(bound, cuts, values))

    result = StepEmbedding(domain, bound, tuple(maps), patterns, normalized=True)
    pair = first_non_isometric_pair(result)
    if pair is not None:
        raise EmbeddingVerificationError(f"amalgam embedding is not isometric at {pair}", pair=pair)
    if count > 2 ** len(a_star):
        raise VerificationError(f"{count} sign patterns exceed 2^{len(a_star)}")
    logger.debug(
        "amalgam embedded",
        extra={"parts": len(steps), "points": domain.size, "patterns": count, "bound": str(bound)},
    )
    return result


def restrict(e: StepEmbedding, labels: Sequence[str]) -> StepEmbedding:
    """restriction of an embedding to a set of points containing bot"""
    sub = e.domain.subspace(labels)
    return StepEmbedding(sub, e.bound, tuple(e.image(label) for label in labels), normalized=e.normalized)


def restriction_consistent(e: StepEmbedding, parts: Sequence[AnyEmbedding], shared: Sequence[str]) -> bool:
    """every canonical copy keeps the pairwise distances of its part"""
    for k, part in enumerate(parts):
        domain = part.domain
        copy_labels = [spaces.component_label(k, label, shared) for label in domain.labels]
        if first_non_isometric_pair(restrict(e, copy_labels)) is not None:
            return False
        restricted = e.domain.subspace(copy_labels)
        if restricted.dist != domain.dist:
            return False
    return True


# staged family

def _family_node(
    spec: TreeSpec,
    path: TreePath,
    width: int,
    top_size: int,
    stages: List[StageRecord],
    repaired: List[Tuple[str, str]],
) -> StepEmbedding:
    if path and trees.level_spec(spec, path).alpha.is_zero:
        e = embed_finite(spaces.build_graph(GraphSpec(path, top_size)), supplement=True)
        repaired.extend(e.repaired_pairs)
        return matrix_to_step(e)
    children = [
        _family_node(spec, path + (k,), width, top_size, stages, repaired) for k in range(1, width + 1)
    ]
    shared = spaces.shared_labels_for(path, top_size)
    e = embed_amalgam(children, shared)
    cap = 2 ** (len(shared) - 1)
    stages.append(
        StageRecord(path, trees.rank(spec, path), e.pattern_count, cap, e.bound, e.domain.size)
    )
    return e


def embed_family(
    mu: Ordinal,
    path: TreePath,
    width: int,
    top_size: int = 2,
    size_cap: Optional[int] = None,
) -> FamilyEmbedding:
    """isometric step-function embedding of family_space(mu, path, width), stage by stage"""
    spec = TreeSpec(mu)
    path = check_path(path)
    # validates the node and the size cap before any work
    expected = spaces.family_space(mu, path, width, top_size=top_size, size_cap=size_cap)
    stages: List[StageRecord] = []
    repaired: List[Tuple[str, str]] = []
    e = _family_node(spec, path, width, top_size, stages, repaired)
    if e.domain != expected:
        raise VerificationError("staged embedding domain differs from the family space")
    for record in stages:
        if record.patterns > record.pattern_cap:
            raise VerificationError(f"stage {list(record.path)} uses {record.patterns} > {record.pattern_cap} patterns")
    if not path and top_size == 2 and stages and stages[-1].patterns != 1:
        raise VerificationError("the top stage must use a single sign pattern")
    if top_size == 2:
        if any(v != 1 for v in e.image("1").values) or any(v != -1 for v in e.image("2").values):
            raise VerificationError("f(1) must be constantly 1 and f(2) constantly -1")
    logger.info(
        "family embedded",
        extra={
            "mu": str(mu),
            "path": list(path),
            "width": width,
            "points": e.domain.size,
            "stages": len(stages),
            "bound": str(e.bound),
            "repaired": len(repaired),
        },
    )
    return FamilyEmbedding(e, tuple(stages), tuple(dict.fromkeys(repaired)))


def frechet_embedding(m: MetricSpace) -> MatrixEmbedding:
    """x -> (d(x,p) - d(bot,p))_p over all points p; always an isometry"""
    base = m.basepoint_label
    entries = tuple(tuple(m.d(x, p) - m.d(base, p) for p in m.labels) for x in m.labels)
    return MatrixEmbedding(m, tuple(m.labels), entries)
