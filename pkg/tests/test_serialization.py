from __future__ import annotations

import json

import pytest

from mdcq import __version__
from mdcq.diagnostics import Diagnostic, SpecError
from mdcq.graph.core import DimVector, MdcGraph
from mdcq.serialization import JsonSerializer, strip_volatile


def test_envelope_shape() -> None:
    serializer = JsonSerializer("2.0.0")
    payload = json.loads(
        serializer.dumps({"d": 4}, {"seed": 1}, [Diagnostic("warning", "careful")])
    )

    assert payload["schemaVersion"] == "2.0.0"
    assert payload["tool"] == {"name": "mdcq", "version": __version__}
    assert payload["header"] == {"seed": 1}
    assert payload["body"] == {"d": 4}
    assert payload["diagnostics"][0]["severity"] == "warning"
    assert payload["diagnostics"][0]["sourcePath"] is None


def test_graph_spec_round_trip(tmp_path) -> None:
    serializer = JsonSerializer()
    graph = MdcGraph.from_compact(DimVector.of(3, 2, 2), [[3], [1, 2], [1, 2]])
    target = tmp_path / "nested" / "graph.json"

    serializer.dump_graph_spec(graph, target)
    loaded = serializer.load_graph_spec(target)

    assert loaded.dim == graph.dim
    assert loaded.conn == graph.conn
    full = serializer.loads_graph_spec(json.dumps(serializer.graph_spec(graph, full=True)))
    assert full.conn == graph.conn


def test_spec_closes_negation_unless_disabled() -> None:
    serializer = JsonSerializer()
    text = '{"N": [2, 4], "S": {"compact": [[2], []]}}'

    assert serializer.loads_graph_spec(text).valency == 2
    with pytest.raises(SpecError) as info:
        serializer.loads_graph_spec(
            '{"N": [2, 4], "S": {"compact": [[2], []]}, "close_negation": false}'
        )
    assert info.value.field == "S.compact"


@pytest.mark.parametrize(
    "text,field",
    [
        ('{"S": {"full": []}}', "N"),
        ('{"N": [2, 2]}', "S"),
        ('{"N": [1, 2], "S": {"full": []}}', "N"),
        ('{"N": [2, 2], "S": {"compact": [[]], "full": []}}', "S"),
        ('{"N": [2, 2], "S": {"full": [[0, 0]]}}', "S.full"),
    ],
)
def test_spec_errors_name_the_field(text: str, field: str) -> None:
    with pytest.raises(SpecError) as info:
        JsonSerializer().loads_graph_spec(text)

    assert info.value.field == field


def test_invalid_json_reports_line(tmp_path) -> None:
    path = tmp_path / "broken.json"
    path.write_text('{\n  "N": [2, 2],\n  oops\n}', encoding="utf-8")

    with pytest.raises(SpecError) as info:
        JsonSerializer().load_graph_spec(path)
    assert info.value.line == 3
    assert info.value.to_diagnostic().to_dict()["sourcePath"] == str(path)


def test_csv_carries_header_comments() -> None:
    text = JsonSerializer().dumps_csv([(0, 1), (2, 6)], ("weight", "count"), {"seed": 5})

    assert text.splitlines() == ["# seed=5", "weight,count", "0,1", "2,6"]


def test_strip_volatile_drops_timing() -> None:
    payload = {"body": [{"n": 6, "elapsed": 0.12}], "timestamp": "now"}

    assert strip_volatile(payload) == {"body": [{"n": 6}]}
