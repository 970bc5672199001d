"""Growth types of attracting laminations from a declared inclusion order.

Each node of a :class:`LaminationPoset` carries an expansion factor ``λ0 > 1``. The growth type of a node is
defined recursively over the nodes it strictly contains:

* a minimal node has type ``(λ0, 0)``;
* otherwise let ``(λ′, m′)`` be the largest type of a strictly contained node; the node's type is
  ``(λ0, 0)`` if ``λ′ < λ0``, ``(λ′, m′)`` if ``λ′ > λ0`` and ``(λ0, m′ + 1)`` if ``λ′ = λ0``.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence

import networkx as nx

from .exceptions import PosetCycleException
from .objects.growth import PROVENANCE_EXACT, PROVENANCE_FITTED, AlgebraicReal, GrowthType

log = logging.getLogger(__name__)


class LaminationPoset:
    """Finite strict partial order of labeled laminations, stored as a transitively reduced DAG."""

    __slots__ = [
        "__graph",
        "__types",
    ]

    def __init__(self, nodes: Mapping[str, AlgebraicReal], edges: Iterable[tuple[str, str]] = ()):
        """
        Initialize a new poset.

        :param nodes: Expansion factor of each node, keyed by label.
        :param edges: Pairs ``(sub, super)`` meaning ``sub ⊊ super``.
        :raises PosetCycleException: If the relation has a cycle.
        :raises ValueError: If an edge names an unknown node or an expansion factor is not above 1.
        """
        graph = nx.DiGraph()
        for label, expansion in nodes.items():
            if expansion.approx <= 1.0 or expansion.is_one():
                raise ValueError(f"Expansion factor of {label} must exceed 1, got {expansion.approx}")
            graph.add_node(label, expansion=expansion)
        for sub, sup in edges:
            for label in (sub, sup):
                if label not in graph:
                    raise ValueError(f"Edge mentions unknown node '{label}'")
            graph.add_edge(sub, sup)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise PosetCycleException(f"Inclusion order has a cycle: {cycle}")

        reduced = nx.transitive_reduction(graph)
        reduced.add_nodes_from(graph.nodes(data=True))
        self.__graph = reduced
        self.__types: dict[str, GrowthType] = {}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaminationPoset):
            raise NotImplementedError

        if set(self.labels) != set(other.labels):
            return False

        if set(self.edges) != set(other.edges):
            return False

        return all(self.expansion(x).same_as(other.expansion(x)) for x in self.labels)

    __hash__ = None

    def __repr__(self):
        return f"{self.__class__.__name__}(nodes={len(self.labels)}, edges={self.edges})"

    @classmethod
    def chain(cls, labels: Sequence[str], expansions: Sequence[AlgebraicReal]) -> "LaminationPoset":
        """
        Totally ordered poset ``labels[0] ⊊ labels[1] ⊊ …``.

        :param labels: Node labels, smallest first.
        :param expansions: Expansion factor of each node.
        :return: Chain poset.
        """
        return cls(dict(zip(labels, expansions)), zip(labels, labels[1:]))

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary with nodes and their expansion factors, and the reduced edges.
        """
        return {
            "nodes": {label: self.expansion(label).to_dict() for label in self.labels},
            "edges": [list(edge) for edge in self.edges],
        }

    @property
    def graph(self) -> nx.DiGraph:
        """Transitively reduced inclusion graph with edges pointing from sub- to super-lamination."""
        return self.__graph

    @property
    def labels(self) -> list[str]:
        """Node labels in insertion order."""
        return list(self.__graph.nodes)

    @property
    def edges(self) -> list[tuple[str, str]]:
        """Covering relations ``(sub, super)``, sorted."""
        return sorted(self.__graph.edges)

    def expansion(self, label: str) -> AlgebraicReal:
        """Expansion factor of a node."""
        return self.__graph.nodes[label]["expansion"]

    def contained(self, label: str) -> set[str]:
        """Nodes strictly contained in the given node."""
        return nx.ancestors(self.__graph, label)

    def growth_type(self, label: str) -> GrowthType:
        """
        Memoized growth type of a node.

        :param label: Node label.
        :return: Growth type.
        :raises KeyError: If the node is unknown.
        """
        if label not in self.__graph:
            raise KeyError(label)
        cached = self.__types.get(label)
        if cached is not None:
            return cached

        expansion = self.expansion(label)
        provenance = PROVENANCE_EXACT if expansion.is_exact else PROVENANCE_FITTED
        below = self.contained(label)
        if not below:
            result = GrowthType(expansion, 0, provenance)
        else:
            largest = max(self.growth_type(x) for x in below)
            if largest.rate.same_as(expansion):
                result = GrowthType(expansion, largest.degree + 1, provenance)
            elif largest.rate.approx < expansion.approx:
                result = GrowthType(expansion, 0, provenance)
            else:
                result = largest
        log.debug(f"Growth type of {label} is {result}")
        self.__types[label] = result
        return result


def growth_type_of_node(poset: LaminationPoset, node: str) -> GrowthType:
    """
    Growth type of a lamination.

    :param poset: Declared poset.
    :param node: Node label.
    :return: Growth type.
    """
    return poset.growth_type(node)


class PosetReport:
    """Growth types of all nodes and the invariants e, s, e′ of a poset."""

    __slots__ = [
        "__types",
        "__e",
        "__s",
        "__e_prime",
    ]

    def __init__(self, types: Mapping[str, GrowthType], s: int):
        """
        Initialize a new report.

        :param types: Growth type per node.
        :param s: Longest chain length in edges.
        """
        self.__types = dict(types)
        self.__e = len(types)
        self.__s = s
        distinct: list[GrowthType] = []
        for growth in types.values():
            if growth not in distinct:
                distinct.append(growth)
        self.__e_prime = len(distinct)

    def __repr__(self):
        return f"{self.__class__.__name__}(e={self.e}, s={self.s}, e_prime={self.e_prime})"

    def to_dict(self) -> dict:
        """
        Return a dictionary representation.

        :return: Dictionary with ``e``, ``s``, ``ePrime``, per-node types and the ``m ≤ s`` check.
        """
        return {
            "e": self.e,
            "s": self.s,
            "ePrime": self.e_prime,
            "nodes": {label: growth.to_dict() for label, growth in self.types.items()},
            "mLeS": check_m_le_s(self),
        }

    @property
    def types(self) -> dict[str, GrowthType]:
        """Growth type per node."""
        return self.__types

    @property
    def e(self) -> int:
        """Number of laminations."""
        return self.__e

    @property
    def s(self) -> int:
        """Longest chain length, counted in edges."""
        return self.__s

    @property
    def e_prime(self) -> int:
        """Number of distinct growth types."""
        return self.__e_prime


def poset_invariants(poset: LaminationPoset) -> PosetReport:
    """
    Compute all growth types and the invariants of a poset.

    :param poset: Declared poset.
    :return: Report.
    """
    types = {label: poset.growth_type(label) for label in poset.labels}
    s = nx.dag_longest_path_length(poset.graph) if poset.labels else 0
    report = PosetReport(types, s)
    log.info(f"Poset invariants: {report}")
    return report


def check_m_le_s(report: PosetReport) -> bool:
    """
    Whether every node's degree is bounded by the longest chain length.

    :param report: Poset report.
    :return: True if ``m ≤ s`` at every node.
    """
    return all(growth.degree <= report.s for growth in report.types.values())
