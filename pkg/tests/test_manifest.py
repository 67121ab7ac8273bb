from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import pytest

from mdcq.diagnostics import EXIT_BUDGET_EXHAUSTED, EXIT_EXPECTATION_FAILED, EXIT_OK, SpecError
from mdcq.search.manifest import load_manifest, parse_manifest, verify_manifest


def shipped(name: str) -> Path:
    return Path(str(resources.files("mdcq") / "data" / f"{name}.jsonl"))


def line(**payload) -> str:
    return json.dumps(payload)


def test_shipped_examples_pass() -> None:
    report = verify_manifest(shipped("examples"))

    assert report.counts() == {"pass": 2, "fail": 0, "partial": 0}
    assert report.exit_code == EXIT_OK


def test_published_constructions_are_structurally_sound() -> None:
    report = verify_manifest(shipped("props"), structural_only=True)

    assert len(report.entries) == 23
    assert all(entry.status == "pass" for entry in report.entries), [
        entry.to_dict() for entry in report.entries if entry.status != "pass"
    ]
    assert report.exit_code == EXIT_OK


def test_published_notes_become_info_diagnostics() -> None:
    entries = {e.name: e for e in load_manifest(shipped("props"))}

    assert entries["gamma_76_2"].note
    report = verify_manifest(shipped("props"), structural_only=True)
    flagged = [e for e in report.entries if e.name == "gamma_76_2"][0]
    assert any(d.severity == "info" for d in flagged.diagnostics)
    assert flagged.note == entries["gamma_76_2"].note
    assert flagged.to_dict()["note"] == flagged.note


def test_wrong_expectations_fail() -> None:
    text = "\n".join(
        [
            "# cube with a wrong valency and a wrong type",
            line(name="cube", N=[2, 4], S_compact=[[2, 4], [1]], expect={"valency": 4, "type": "I"}),
        ]
    )
    report = verify_manifest(text)
    entry = report.entries[0]

    assert entry.status == "fail"
    assert entry.checks == {"selfDual": True, "valency": False, "type": False}
    assert report.exit_code == EXIT_EXPECTATION_FAILED


def test_exact_distance_and_weights() -> None:
    text = line(
        name="k4",
        N=[2, 2],
        S_compact=[[2], [1, 2]],
        expect={"d": 2, "W": {"2": 6, "3": 0}},
    )
    entry = verify_manifest(text).entries[0]

    assert entry.status == "pass"
    assert entry.observed["d"] == 2
    assert entry.checks["W2"] and entry.checks["W3"]


def test_budget_exhaustion_marks_entry_partial() -> None:
    text = line(name="tiny-budget", N=[2, 5], S_compact=[[2, 5], [1]], expect={"d": 4})
    report = verify_manifest(text, budget=5)

    assert report.entries[0].status == "partial"
    assert report.exit_code == EXIT_BUDGET_EXHAUSTED


def test_blank_and_comment_lines_are_skipped() -> None:
    text = "\n# header\n" + line(N=[2, 2], S_compact=[[], [1]]) + "\n\n"
    entries = parse_manifest(text)

    assert len(entries) == 1
    assert entries[0].name == "line 3"
    assert entries[0].line == 3


@pytest.mark.parametrize(
    "raw,field",
    [
        ('{"N": [2, 2]}', "S_compact"),
        ('{"N": [2, 2], "S_compact": [[9], []]}', "S_compact"),
        ('{"N": [2, 2], "S_compact": [[], [1]], "radius": "seven"}', "radius"),
        ('{"N": [2, 2], "S_compact": [[], [1]], "expect": {"W": [1]}}', "expect.W"),
    ],
)
def test_malformed_lines_report_field_and_line(raw: str, field: str) -> None:
    with pytest.raises(SpecError) as info:
        parse_manifest("# first\n" + raw)

    assert info.value.field == field
    assert info.value.line == 2


def test_invalid_json_reports_line() -> None:
    with pytest.raises(SpecError) as info:
        parse_manifest(line(N=[2, 2], S_compact=[[], [1]]) + "\n{not json")

    assert info.value.line == 2


def test_missing_manifest_file(tmp_path) -> None:
    with pytest.raises(SpecError):
        load_manifest(tmp_path / "absent.jsonl")


@pytest.mark.slow
def test_published_constructions_full_verification() -> None:
    report = verify_manifest(shipped("props"), threads=8)

    assert report.exit_code == EXIT_OK
