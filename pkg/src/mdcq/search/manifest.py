"""JSON-lines manifests of published constructions and their verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from loguru import logger

from ..codes.graph_code import GraphCode, code_from_graph, code_type, is_self_dual
from ..diagnostics import (
    EXIT_BUDGET_EXHAUSTED,
    EXIT_EXPECTATION_FAILED,
    EXIT_OK,
    BudgetExceeded,
    Diagnostic,
    SpecError,
)
from ..distance.enumerator import (
    DEFAULT_WORK_BUDGET,
    distance_bounds,
    low_weight_census,
    min_distance_exact,
)
from ..graph.core import CompactConnectionSet, DimVector, MdcGraph


Status = Literal["pass", "fail", "partial"]


@dataclass(frozen=True, slots=True)
class Expectation:
    valency: int | None = None
    code_type: str | None = None
    d: int | None = None
    d_at_least: int | None = None
    weights: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class ManifestEntry:
    name: str
    dim: DimVector
    compact: CompactConnectionSet
    expect: Expectation
    radius: int | None = None
    claimed_d: int | None = None
    note: str | None = None
    line: int | None = None


@dataclass(slots=True)
class EntryResult:
    name: str
    status: Status
    checks: dict[str, bool] = field(default_factory=dict)
    observed: dict[str, Any] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    note: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status,
            "note": self.note,
            "checks": self.checks,
            "observed": self.observed,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }


@dataclass(slots=True)
class ManifestReport:
    source: Path | None
    entries: list[EntryResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(entry.status == "pass" for entry in self.entries)

    @property
    def exit_code(self) -> int:
        statuses = {entry.status for entry in self.entries}
        if "fail" in statuses:
            return EXIT_EXPECTATION_FAILED
        if "partial" in statuses:
            return EXIT_BUDGET_EXHAUSTED
        return EXIT_OK

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "partial": 0}
        for entry in self.entries:
            out[entry.status] += 1
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": str(self.source) if self.source else None,
            "summary": self.counts(),
            "entries": [entry.to_dict() for entry in self.entries],
        }


def _optional_int(payload: dict[str, Any], key: str, line: int) -> int | None:
    value = payload.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"{key} must be an integer", field=key, line=line)
    return value


def _parse_expectation(raw: Any, line: int) -> Expectation:
    if not isinstance(raw, dict):
        raise SpecError("expect must be an object", field="expect", line=line)
    kind = raw.get("type")
    if kind not in (None, "I", "II"):
        raise SpecError(f"unknown code type {kind!r}", field="expect.type", line=line)
    weights_raw = raw.get("W") or {}
    if not isinstance(weights_raw, dict):
        raise SpecError("W must map weights to counts", field="expect.W", line=line)
    try:
        weights = {int(w): int(c) for w, c in weights_raw.items()}
    except (TypeError, ValueError) as exc:
        raise SpecError("W must map weights to counts", field="expect.W", line=line) from exc
    return Expectation(
        valency=_optional_int(raw, "valency", line),
        code_type=kind,
        d=_optional_int(raw, "d", line),
        d_at_least=_optional_int(raw, "d_at_least", line),
        weights=weights,
    )


def parse_entry(text: str, line: int, source: Path | None = None) -> ManifestEntry:
    """Parse one manifest line into an entry; malformed input raises ``SpecError``."""

    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(
            f"invalid JSON: {exc.msg}", line=line, source_path=source
        ) from exc
    if not isinstance(payload, dict):
        raise SpecError("manifest line must be an object", line=line, source_path=source)
    for key in ("N", "S_compact"):
        if key not in payload:
            raise SpecError(f"missing {key}", field=key, line=line, source_path=source)
    try:
        dim = DimVector(tuple(payload["N"]))
        compact = CompactConnectionSet.from_lists(payload["S_compact"])
        compact.check_against(dim)
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc), field="S_compact", line=line, source_path=source) from exc
    try:
        expect = _parse_expectation(payload.get("expect", {}), line)
        radius = _optional_int(payload, "radius", line)
        claimed = _optional_int(payload, "claimed_d", line)
    except SpecError as exc:
        exc.source_path = source
        raise
    return ManifestEntry(
        name=str(payload.get("name", f"line {line}")),
        dim=dim,
        compact=compact,
        expect=expect,
        radius=radius,
        claimed_d=claimed,
        note=payload.get("note"),
        line=line,
    )


def load_manifest(path: Path) -> list[ManifestEntry]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}", source_path=path) from exc
    return parse_manifest(text, source=path)


def parse_manifest(text: str, *, source: Path | None = None) -> list[ManifestEntry]:
    """Blank lines and lines starting with ``#`` are skipped."""

    entries: list[ManifestEntry] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        entries.append(parse_entry(stripped, number, source))
    return entries


def _check(result: EntryResult, name: str, ok: bool, message: str) -> None:
    result.checks[name] = ok
    if not ok:
        result.status = "fail"
        result.diagnostics.append(Diagnostic("error", message, field=name))


def verify_entry(
    entry: ManifestEntry,
    budget: int = DEFAULT_WORK_BUDGET,
    *,
    threads: int = 1,
    structural_only: bool = False,
) -> EntryResult:
    """Build the graph and code of ``entry`` and test every stated expectation."""

    result = EntryResult(entry.name, "pass", note=entry.note)
    expect = entry.expect
    graph = MdcGraph.from_compact(entry.dim, entry.compact)
    code = code_from_graph(graph)
    kind = code_type(graph)
    result.observed.update(
        {"n": graph.n, "valency": graph.valency, "type": kind.value}
    )
    if entry.note:
        result.diagnostics.append(
            Diagnostic("info", f"{entry.name}: {entry.note}", line=entry.line)
        )

    _check(result, "selfDual", is_self_dual(code), "code is not self-dual")
    if expect.valency is not None:
        _check(
            result,
            "valency",
            graph.valency == expect.valency,
            f"valency {graph.valency}, expected {expect.valency}",
        )
    if expect.code_type is not None:
        _check(
            result,
            "type",
            kind.value == expect.code_type,
            f"Type {kind.value}, expected Type {expect.code_type}",
        )
    if structural_only:
        return result

    try:
        _distance_checks(entry, code, result, budget, threads)
    except BudgetExceeded as exc:
        if result.status == "pass":
            result.status = "partial"
        partial = exc.partial
        if partial is not None and hasattr(partial, "to_dict"):
            result.observed["partial"] = partial.to_dict()
        result.diagnostics.append(Diagnostic("warning", str(exc)))
    return result


def _distance_checks(
    entry: ManifestEntry,
    code: GraphCode,
    result: EntryResult,
    budget: int,
    threads: int,
) -> None:
    expect = entry.expect
    census_d: int | None = None
    census_upto = -1
    if expect.weights:
        census = low_weight_census(code, max(expect.weights), budget, threads=threads)
        result.observed["W"] = {str(w): c for w, c in enumerate(census.counts) if c}
        census_upto = census.upto
        census_d = census.minimum_distance()
        for weight, count in sorted(expect.weights.items()):
            observed = census[weight] if weight <= census.upto else None
            _check(
                result,
                f"W{weight}",
                observed == count,
                f"W_{weight} = {observed}, expected {count}",
            )
    if expect.d is not None:
        if census_d is not None or census_upto >= expect.d:
            d = census_d
        else:
            d = min_distance_exact(code, budget, threads=threads).lower
        result.observed["d"] = d
        _check(result, "d", d == expect.d, f"d = {d}, expected {expect.d}")
    if expect.d_at_least is not None:
        radius = entry.radius if entry.radius is not None else expect.d_at_least - 1
        report = distance_bounds(code, radius, work_budget=budget, threads=threads)
        result.observed["bounds"] = report.to_dict()
        undecided = report.lower < expect.d_at_least <= report.upper
        if undecided and report.radius < min(radius, code.n):
            raise BudgetExceeded(
                f"bounded enumeration reached radius {report.radius} of {radius}", report
            )
        _check(
            result,
            "dAtLeast",
            report.lower >= expect.d_at_least,
            f"lower bound {report.lower}, expected at least {expect.d_at_least}",
        )
        if entry.claimed_d is not None and report.lower < entry.claimed_d:
            result.diagnostics.append(
                Diagnostic(
                    "info",
                    f"claimed d = {entry.claimed_d} not certified; "
                    f"interval [{report.lower}, {report.upper}]",
                )
            )


def verify_manifest(
    source: Path | str,
    budget: int = DEFAULT_WORK_BUDGET,
    *,
    threads: int = 1,
    structural_only: bool = False,
) -> ManifestReport:
    """Verify every entry of a manifest file (or manifest text).

    A failed expectation is reported in the entry, never raised.
    """

    if isinstance(source, Path):
        entries = load_manifest(source)
        report = ManifestReport(source)
    else:
        entries = parse_manifest(source)
        report = ManifestReport(None)
    for entry in entries:
        result = verify_entry(
            entry, budget, threads=threads, structural_only=structural_only
        )
        logger.info("{}: {}", entry.name, result.status)
        report.entries.append(result)
    return report
