"""Self-dual additive codes over GF(4) built from graphs."""

from .graph_code import (
    CodeType,
    GraphCode,
    SymplecticVector,
    code_from_graph,
    code_type,
    codeword,
    is_self_dual,
)
from .gf4 import F4Element, trace_inner_product

__all__ = [
    "CodeType",
    "F4Element",
    "GraphCode",
    "SymplecticVector",
    "code_from_graph",
    "code_type",
    "codeword",
    "is_self_dual",
    "trace_inner_product",
]
