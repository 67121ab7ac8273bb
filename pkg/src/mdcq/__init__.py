"""Multidimensional circulant graphs and the self-dual GF(4) codes they generate."""

__version__ = "0.1.0"

from .config import RunConfig  # noqa: E402
from .graph.core import DimVector, MdcGraph  # noqa: E402
from .codes.graph_code import GraphCode, code_from_graph  # noqa: E402
from .serialization.json_serializer import JsonSerializer  # noqa: E402
from .cli import main as cli_main  # noqa: E402

__all__ = [
    "DimVector",
    "GraphCode",
    "JsonSerializer",
    "MdcGraph",
    "RunConfig",
    "cli_main",
    "code_from_graph",
    "__version__",
]
