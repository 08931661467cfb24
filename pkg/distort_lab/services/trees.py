"""
the trees T_{alpha+1}: T_1 is the set of one-entry paths, a successor tree
hangs a copy of T_alpha below every n, and a limit tree hangs T_{alpha[n]+1}
below n. closed forms are checked against brute-force derivation of finite
truncations
"""
import math
from functools import lru_cache
from typing import Dict, Set, Union

from distort_lab.models.ordinal import ZERO, Ordinal, fundamental_sequence, predecessor, successor
from distort_lab.models.tree import FiniteTree, TreePath, TreeSpec, check_path
from distort_lab.utils.exceptions import NotInTreeError


def child_spec(spec: TreeSpec, n: int) -> TreeSpec:
    """spec of the subtree hanging below the one-entry path (n)"""
    if spec.alpha.is_zero:
        raise NotInTreeError("T_1 has no paths of length 2")
    if spec.alpha.is_successor:
        return TreeSpec(predecessor(spec.alpha))
    return TreeSpec(fundamental_sequence(spec.alpha, n))


def level_spec(spec: TreeSpec, path: TreePath) -> TreeSpec:
    """spec of the tree whose one-entry paths include the last entry of path"""
    current = spec
    for entry in path[:-1]:
        current = child_spec(current, entry)
    return current


def contains(spec: TreeSpec, path: TreePath) -> bool:
    path = check_path(path)
    if not path:
        raise NotInTreeError("the empty path is not a member of the tree")
    current = spec
    for depth, entry in enumerate(path):
        if depth == len(path) - 1:
            return True
        if current.alpha.is_zero:
            return False
        current = child_spec(current, entry)
    return True


def _require(spec: TreeSpec, path: TreePath):
    if not contains(spec, path):
        raise NotInTreeError(f"{list(path)} is not in T_{{{successor(spec.alpha)}}}")


def rank(spec: TreeSpec, path: TreePath) -> Ordinal:
    """first derivation stage at which the node is maximal; the empty path gets alpha+1"""
    path = check_path(path)
    if not path:
        return successor(spec.alpha)
    _require(spec, path)
    level = level_spec(spec, path)
    if level.alpha.is_zero:
        return ZERO
    return successor(child_spec(level, path[-1]).alpha)


def survival(spec: TreeSpec, path: TreePath) -> Ordinal:
    """largest stage b with path in the b-th derived tree"""
    path = check_path(path)
    _require(spec, path)
    # sup of sibling ranks: alpha of the sibling family's own spec
    return level_spec(spec, path).alpha


def index(spec: TreeSpec) -> Ordinal:
    return successor(spec.alpha)


def derive_finite(t: FiniteTree) -> FiniteTree:
    """keep a node when some sibling (itself included) has a child"""
    non_maximal = {node[:-1] for node in t.nodes if len(node) > 1}
    live_parents = {node[:-1] for node in non_maximal}
    return FiniteTree(frozenset(node for node in t.nodes if node[:-1] in live_parents))


def index_finite(t: FiniteTree) -> Union[int, float]:
    """number of derivations that empty the tree; inf if a nonempty fixed point is reached"""
    steps = 0
    while t.nodes:
        derived = derive_finite(t)
        if derived == t:
            return math.inf
        t = derived
        steps += 1
    return steps


@lru_cache(maxsize=None)
def truncate(spec: TreeSpec, width: int) -> FiniteTree:
    """keep child indices <= width at every level"""
    nodes: Set[TreePath] = set()
    for k in range(1, width + 1):
        nodes.add((k,))
        if not spec.alpha.is_zero:
            nodes.update((k,) + sub for sub in truncate(child_spec(spec, k), width).nodes)
    return FiniteTree(frozenset(nodes))


def maximal_stages(t: FiniteTree) -> Dict[TreePath, int]:
    """brute force: first derivation step at which each node has no child"""
    stages: Dict[TreePath, int] = {}
    step = 0
    while t.nodes:
        parents = {node[:-1] for node in t.nodes if len(node) > 1}
        for node in t.nodes:
            if node not in stages and node not in parents:
                stages[node] = step
        t = derive_finite(t)
        step += 1
    return stages


def truncated_rank(spec: TreeSpec, path: TreePath, width: int) -> int:
    """predicted brute-force rank of a node inside truncate(spec, width)"""
    path = check_path(path)
    _require(spec, path)
    if len(path) > 1:
        return truncated_rank(child_spec(spec, path[0]), path[1:], width)
    if spec.alpha.is_zero:
        return 0
    return truncated_index(child_spec(spec, path[0]), width)


def truncated_index(spec: TreeSpec, width: int) -> int:
    """predicted brute-force index of truncate(spec, width)"""
    if spec.alpha.is_zero:
        return 1
    return max(truncated_rank(spec, (k,), width) for k in range(1, width + 1)) + 1
