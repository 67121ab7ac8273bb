"""JSON and CSV serialization for reports and graph spec files."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

from .. import __version__
from ..diagnostics import Diagnostic, SpecError
from ..graph.core import (
    CompactConnectionSet,
    DimVector,
    MdcGraph,
    compact_of,
    expand_compact,
    validate_connection_set,
)


TOOL_NAME = "mdcq"
VOLATILE_KEYS = frozenset({"elapsed", "timestamp"})


def strip_volatile(payload: Any) -> Any:
    """Drop timing fields so two runs can be compared byte for byte."""

    if isinstance(payload, dict):
        return {
            k: strip_volatile(v) for k, v in payload.items() if k not in VOLATILE_KEYS
        }
    if isinstance(payload, list):
        return [strip_volatile(v) for v in payload]
    return payload


class JsonSerializer:
    """Wrap command results in the output envelope and read/write graph specs."""

    def __init__(self, schema_version: str = "1.0.0") -> None:
        self.schema_version = schema_version

    def envelope(
        self,
        body: Any,
        header: dict[str, Any] | None = None,
        diagnostics: Iterable[Diagnostic] = (),
    ) -> dict[str, Any]:
        return {
            "schemaVersion": self.schema_version,
            "tool": {"name": TOOL_NAME, "version": __version__},
            "header": header or {},
            "body": body,
            "diagnostics": [d.to_dict() for d in diagnostics],
        }

    def dumps(
        self,
        body: Any,
        header: dict[str, Any] | None = None,
        diagnostics: Iterable[Diagnostic] = (),
        *,
        indent: int = 2,
    ) -> str:
        """Return the JSON envelope for ``body``."""

        return json.dumps(self.envelope(body, header, diagnostics), indent=indent)

    def dump_to_path(self, text: str, destination: Path) -> None:
        destination.parent.mkdir(parents=True, exist_ok=True)
        destination.write_text(text, encoding="utf-8")

    def dumps_csv(
        self,
        rows: Iterable[Sequence[Any]],
        columns: Sequence[str],
        header: dict[str, Any] | None = None,
    ) -> str:
        """CSV with one ``# key=value`` comment line per header field."""

        buffer = io.StringIO()
        for key, value in (header or {}).items():
            buffer.write(f"# {key}={json.dumps(value)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        return buffer.getvalue()

    def load_graph_spec(self, path: Path, *, strict: bool = False) -> MdcGraph:
        """Read ``{"N": [...], "S": {"compact": [...]} | {"full": [...]}}``.

        With ``strict`` a connection set missing negatives is rejected even when the
        file asks for closure.
        """

        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise SpecError(f"cannot read {path}: {exc}", source_path=path) from exc
        return self.loads_graph_spec(text, source=path, strict=strict)

    def loads_graph_spec(
        self, text: str, *, source: Path | None = None, strict: bool = False
    ) -> MdcGraph:
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(
                f"invalid JSON: {exc.msg}", line=exc.lineno, source_path=source
            ) from exc
        if not isinstance(payload, dict):
            raise SpecError("graph spec must be an object", source_path=source)
        for key in ("N", "S"):
            if key not in payload:
                raise SpecError(f"missing {key}", field=key, source_path=source)

        try:
            dim = DimVector(tuple(payload["N"]))
        except (ValueError, TypeError) as exc:
            raise SpecError(str(exc), field="N", source_path=source) from exc

        close = not strict and bool(payload.get("close_negation", True))
        conn_spec = payload["S"]
        if not isinstance(conn_spec, dict) or len(conn_spec.keys() & {"compact", "full"}) != 1:
            raise SpecError(
                'S must hold exactly one of "compact" or "full"',
                field="S",
                source_path=source,
            )
        try:
            if "compact" in conn_spec:
                compact = CompactConnectionSet.from_lists(conn_spec["compact"])
                conn = expand_compact(dim, compact, close_negation=close)
            else:
                conn = validate_connection_set(dim, conn_spec["full"], close)
        except (ValueError, TypeError) as exc:
            field = "S.compact" if "compact" in conn_spec else "S.full"
            raise SpecError(str(exc), field=field, source_path=source) from exc
        return MdcGraph(dim, conn)

    def graph_spec(self, graph: MdcGraph, *, full: bool = False) -> dict[str, Any]:
        conn: dict[str, Any]
        if full:
            conn = {"full": graph.conn.as_lists()}
        else:
            conn = {"compact": compact_of(graph.conn).as_lists()}
        return {"N": list(graph.dim.moduli), "S": conn, "close_negation": False}

    def dump_graph_spec(
        self, graph: MdcGraph, destination: Path, *, full: bool = False
    ) -> None:
        text = json.dumps(self.graph_spec(graph, full=full), indent=2)
        self.dump_to_path(text + "\n", destination)
