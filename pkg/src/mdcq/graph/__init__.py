"""MDC graphs and the isomorphisms between them."""

from .core import (
    AdjacencyMatrix,
    CompactConnectionSet,
    ConnectionSet,
    DimVector,
    MdcGraph,
    PartitionInfo,
    build_adjacency,
    compact_of,
    complement,
    expand_compact,
    partition_classes,
    validate_connection_set,
    verify_nested_block_circulant,
)
from .summary import GraphSummary, graph_summary

__all__ = [
    "AdjacencyMatrix",
    "CompactConnectionSet",
    "ConnectionSet",
    "DimVector",
    "GraphSummary",
    "MdcGraph",
    "PartitionInfo",
    "build_adjacency",
    "compact_of",
    "complement",
    "expand_compact",
    "graph_summary",
    "partition_classes",
    "validate_connection_set",
    "verify_nested_block_circulant",
]
