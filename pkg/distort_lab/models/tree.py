from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from distort_lab.models.ordinal import Ordinal
from distort_lab.utils.exceptions import DomainError

TreePath = Tuple[int, ...]


def check_path(path: Iterable[int]) -> TreePath:
    """validate entries and return the path as a tuple"""
    path = tuple(path)
    for entry in path:
        if not isinstance(entry, int) or entry < 1:
            raise DomainError(f"tree path entries must be positive integers, got {path}")
    return path


@dataclass(frozen=True)
class TreeSpec:
    """the tree T_{alpha+1} on the positive integers"""
    alpha: Ordinal


@dataclass(frozen=True)
class FiniteTree:
    """finite set of nonempty paths closed under nonempty prefixes"""
    nodes: FrozenSet[TreePath] = frozenset()

    def __post_init__(self):
        for node in self.nodes:
            if not node:
                raise DomainError("finite trees do not contain the empty path")
            check_path(node)
            if len(node) > 1 and node[:-1] not in self.nodes:
                raise DomainError(f"tree is not prefix closed: {node} has no parent")

    @classmethod
    def of(cls, nodes: Iterable[Iterable[int]]) -> "FiniteTree":
        return cls(frozenset(tuple(n) for n in nodes))

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, path) -> bool:
        return tuple(path) in self.nodes

    def sorted_nodes(self):
        return sorted(self.nodes, key=lambda p: (len(p), p))
