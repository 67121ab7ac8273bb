"""Graph-level metrics reported by ``mdcq build``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import networkx as nx

from .core import (
    MdcGraph,
    PartitionInfo,
    intra_class_edges,
    partition_classes,
    verify_nested_block_circulant,
)


@dataclass(frozen=True, slots=True)
class GraphSummary:
    order: int
    valency: int
    connected: bool
    diameter: int | None
    bipartite: bool
    partition: PartitionInfo
    intra_class_edges: int
    nested_circulant: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "valency": self.valency,
            "connected": self.connected,
            "diameter": self.diameter,
            "bipartite": self.bipartite,
            "partition": self.partition.to_dict(),
            "intraClassEdges": self.intra_class_edges,
            "nestedCirculant": self.nested_circulant,
        }


def to_networkx(graph: MdcGraph) -> nx.Graph:
    return nx.from_numpy_array(graph.adjacency.bits)


def graph_summary(graph: MdcGraph) -> GraphSummary:
    """Order, valency, connectivity, diameter and partition structure of ``graph``.

    ``diameter`` is None when the graph is disconnected.
    """

    g = to_networkx(graph)
    connected = graph.n > 0 and nx.is_connected(g)
    partition = partition_classes(graph)
    return GraphSummary(
        order=graph.n,
        valency=graph.valency,
        connected=connected,
        diameter=nx.diameter(g) if connected else None,
        bipartite=nx.is_bipartite(g),
        partition=partition,
        intra_class_edges=intra_class_edges(graph, partition),
        nested_circulant=verify_nested_block_circulant(graph.adjacency, graph.dim),
    )
