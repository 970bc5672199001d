"""Subgroup graphs and their folding, used to compute ranks of finitely generated subgroups."""

import logging
from collections.abc import Iterable, Sequence

from networkx.utils import UnionFind

from .exceptions import RankMismatchException
from .objects.word import Word

log = logging.getLogger(__name__)

Edge = tuple[int, int, int]
"""Edge ``(tail, generator index, head)`` read in the positive direction of its label."""


class SubgroupGraph:
    """Labeled graph with a basepoint whose closed paths at the basepoint spell the subgroup's elements."""

    __slots__ = [
        "__rank",
        "__basepoint",
        "__vertices",
        "__edges",
        "__folded",
    ]

    def __init__(
        self,
        rank: int,
        vertices: Iterable[int],
        edges: Iterable[Edge],
        basepoint: int = 0,
        folded: bool = False,
    ):
        """
        Initialize a new subgroup graph.

        :param rank: Rank of the ambient free group.
        :param vertices: Vertex identifiers.
        :param edges: Labeled edges.
        :param basepoint: Basepoint vertex.
        :param folded: Whether the graph is already folded.
        """
        self.__rank = rank
        self.__basepoint = basepoint
        self.__vertices = frozenset(vertices) | {basepoint}
        self.__edges = frozenset(edges)
        self.__folded = folded

    def __repr__(self):
        return (
            f"{self.__class__.__name__}("
            f"rank={self.rank}, "
            f"vertices={len(self.vertices)}, "
            f"edges={len(self.edges)}, "
            f"folded={self.folded}"
            ")"
        )

    @classmethod
    def from_generators(cls, generators: Sequence[Word]) -> "SubgroupGraph":
        """
        Wedge of petals, one loop at the basepoint per nontrivial generator.

        :param generators: Words of a common rank.
        :return: Unfolded graph.
        :raises RankMismatchException: If the generators have different ranks.
        """
        ranks = {w.rank for w in generators}
        if len(ranks) > 1:
            raise RankMismatchException(f"Generators have different ranks: {sorted(ranks)}")
        rank = ranks.pop() if ranks else 0

        vertices = [0]
        edges: list[Edge] = []
        next_vertex = 1
        for w in generators:
            codes = w.codes
            if not codes:
                continue
            prev = 0
            for pos, c in enumerate(codes):
                if pos == len(codes) - 1:
                    nxt = 0
                else:
                    nxt = next_vertex
                    next_vertex += 1
                    vertices.append(nxt)
                if c > 0:
                    edges.append((prev, c - 1, nxt))
                else:
                    edges.append((nxt, -c - 1, prev))
                prev = nxt
        return cls(rank, vertices, edges)

    @property
    def rank(self) -> int:
        """Rank of the ambient free group."""
        return self.__rank

    @property
    def basepoint(self) -> int:
        """Basepoint vertex."""
        return self.__basepoint

    @property
    def vertices(self) -> frozenset[int]:
        """Vertices."""
        return self.__vertices

    @property
    def edges(self) -> frozenset[Edge]:
        """Labeled edges."""
        return self.__edges

    @property
    def folded(self) -> bool:
        """Whether no two edges with the same label leave or enter a vertex together."""
        return self.__folded

    def fold(self) -> "SubgroupGraph":
        """
        Identify edges with equal labels and a common endpoint until none are left.

        :return: Folded graph.
        """
        if self.__folded:
            return self

        uf = UnionFind(self.__vertices)
        passes = 0
        changed = True
        while changed:
            changed = False
            passes += 1
            seen: dict[tuple[int, int], int] = {}
            for u, label, v in self.__edges:
                u, v = uf[u], uf[v]
                for key, target in (((u, label + 1), v), ((v, -(label + 1)), u)):
                    other = seen.get(key)
                    if other is None:
                        seen[key] = target
                    elif uf[other] != uf[target]:
                        uf.union(other, target)
                        changed = True

        edges = {(uf[u], label, uf[v]) for u, label, v in self.__edges}
        vertices = {uf[v] for v in self.__vertices}
        log.debug(f"Folded {len(self.__edges)} edges into {len(edges)} after {passes} passes")
        return SubgroupGraph(self.__rank, vertices, edges, uf[self.__basepoint], folded=True)

    def core(self) -> "SubgroupGraph":
        """
        Remove hanging trees, keeping the basepoint.

        :return: Graph without valence-one vertices other than the basepoint.
        """
        vertices = set(self.__vertices)
        edges = set(self.__edges)
        while True:
            valence = dict.fromkeys(vertices, 0)
            for u, _, v in edges:
                valence[u] += 1
                valence[v] += 1
            hanging = {v for v, k in valence.items() if k <= 1 and v != self.__basepoint}
            if not hanging:
                break
            vertices -= hanging
            edges = {e for e in edges if e[0] not in hanging and e[2] not in hanging}
        return SubgroupGraph(self.__rank, vertices, edges, self.__basepoint, folded=self.__folded)

    def subgroup_rank(self) -> int:
        """
        Rank of the subgroup, ``E − V + 1`` of the folded graph.

        :return: Rank.
        """
        graph = self.fold()
        return len(graph.edges) - len(graph.vertices) + 1

    def contains(self, w: Word) -> bool:
        """
        Whether a word lies in the subgroup, by reading it from the basepoint in the folded graph.

        :param w: Reduced word.
        :return: True if the word spells a closed path at the basepoint.
        :raises RankMismatchException: If the word has a different rank.
        """
        graph = self.fold()
        if w.rank != graph.rank and graph.edges:
            raise RankMismatchException(f"Word has rank {w.rank}, graph has rank {graph.rank}")
        moves: dict[tuple[int, int], int] = {}
        for u, label, v in graph.edges:
            moves[(u, label + 1)] = v
            moves[(v, -(label + 1))] = u
        vertex = graph.basepoint
        for c in w.codes:
            nxt = moves.get((vertex, c))
            if nxt is None:
                return False
            vertex = nxt
        return vertex == graph.basepoint


def subgroup_rank(generators: Sequence[Word]) -> int:
    """
    Rank of the subgroup generated by the given words.

    :param generators: Reduced words of a common rank; may be empty or redundant.
    :return: Rank of the generated subgroup (0 for no generators).
    """
    return SubgroupGraph.from_generators(generators).subgroup_rank()
