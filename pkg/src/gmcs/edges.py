"""Vertex-pair bookkeeping: edge indexing, edge sets, adjacency templates.

Vertices are numbered 1..N and every unordered pair (i, j) with i < j is a
potential edge.  Pairs are ordered row-major along the upper triangle,

    (1,2), (1,3), ..., (1,N), (2,3), ..., (N-1,N)

which coincides with lexicographic order on the tuples (i, j).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidEdgeError

# Adjacency-template marks.
ZERO = "zero"  # edge absent in every admissible graph
ONE = "one"    # edge present in every admissible graph
FREE = "free"  # both choices admissible


def n_pairs(n_vertices: int) -> int:
    """Number of unordered vertex pairs M = N(N-1)/2."""
    if n_vertices < 2:
        raise InvalidEdgeError(f"need at least 2 vertices, got {n_vertices}")
    return n_vertices * (n_vertices - 1) // 2


def check_pair(i: int, j: int, n_vertices: int) -> tuple[int, int]:
    """Validate a vertex pair, returning it unchanged."""
    if not (1 <= i < j <= n_vertices):
        raise InvalidEdgeError(
            f"invalid vertex pair ({i},{j}) for {n_vertices} vertices"
        )
    return (i, j)


def edge_index(i: int, j: int, n_vertices: int) -> int:
    """1-based linear index of the pair (i, j) in row-major order."""
    check_pair(i, j, n_vertices)
    return (i - 1) * n_vertices - i * (i - 1) // 2 + (j - i)


def edge_pair(index: int, n_vertices: int) -> tuple[int, int]:
    """Inverse of :func:`edge_index`."""
    m = n_pairs(n_vertices)
    if not 1 <= index <= m:
        raise InvalidEdgeError(
            f"edge index {index} out of range 1..{m} for {n_vertices} vertices"
        )
    i, k = 1, index
    row = n_vertices - 1
    while k > row:
        k -= row
        i += 1
        row -= 1
    return (i, i + k)


def all_pairs(n_vertices: int) -> list[tuple[int, int]]:
    """All vertex pairs in edge-index order."""
    n_pairs(n_vertices)
    return [
        (i, j)
        for i in range(1, n_vertices)
        for j in range(i + 1, n_vertices + 1)
    ]


@dataclass(frozen=True)
class EdgeSet:
    """A set of vertex pairs over a fixed vertex count."""

    n_vertices: int
    members: frozenset

    def __post_init__(self):
        members = frozenset(tuple(p) for p in self.members)
        for i, j in members:
            check_pair(i, j, self.n_vertices)
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n_vertices, pairs=()):
        return cls(n_vertices, frozenset(tuple(p) for p in pairs))

    def __len__(self):
        return len(self.members)

    def __contains__(self, pair):
        return tuple(pair) in self.members

    def __iter__(self):
        # Lexicographic tuple order equals edge-index order.
        return iter(sorted(self.members))

    def complement(self) -> "EdgeSet":
        rest = set(all_pairs(self.n_vertices)) - self.members
        return EdgeSet(self.n_vertices, frozenset(rest))

    def issubset(self, other: "EdgeSet") -> bool:
        return self.members <= other.members

    def union(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.n_vertices, self.members | other.members)

    def intersection(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.n_vertices, self.members & other.members)


@dataclass(frozen=True)
class TrueModel:
    """Ground-truth graph given as the set of pairs with zero partial correlation.

    ``zero_set`` collects the conditionally independent pairs; its complement
    is the true edge set.
    """

    n_vertices: int
    zero_set: EdgeSet

    def __post_init__(self):
        if self.zero_set.n_vertices != self.n_vertices:
            raise InvalidEdgeError("zero_set vertex count mismatch")

    @property
    def edge_set(self) -> EdgeSet:
        return self.zero_set.complement()


@dataclass(frozen=True)
class AdjacencyTemplate:
    """Symmetric adjacency template over {zero, one, free}.

    ``one`` entries are edges present in every graph of the confidence set,
    ``zero`` entries are absent in every graph, and each ``free`` entry may be
    set to either value, so the template describes 2**count(free) graphs.
    """

    n_vertices: int
    entries: dict

    def __post_init__(self):
        entries = {tuple(p): v for p, v in self.entries.items()}
        expected = set(all_pairs(self.n_vertices))
        if set(entries) != expected:
            raise InvalidEdgeError("template must assign every vertex pair")
        bad = set(entries.values()) - {ZERO, ONE, FREE}
        if bad:
            raise InvalidEdgeError(f"unknown template marks: {sorted(bad)}")
        object.__setattr__(self, "entries", entries)

    def count(self, mark: str) -> int:
        return sum(1 for v in self.entries.values() if v == mark)

    def pairs(self, mark: str) -> list[tuple[int, int]]:
        return sorted(p for p, v in self.entries.items() if v == mark)

    @property
    def n_graphs_log2(self) -> int:
        return self.count(FREE)
