"""Exhaustive enumeration of connection sets and per-dimension classification."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from loguru import logger

from ..codes.graph_code import CodeType, code_from_graph, code_type
from ..diagnostics import BudgetExceeded, Diagnostic
from ..distance.enumerator import (
    DEFAULT_WORK_BUDGET,
    min_distance_at_least,
    min_distance_exact,
)
from ..graph.core import ConnectionSet, DimVector, GroupElement, MdcGraph
from ..graph.iso import canonical_form, symmetry_maps
from .tables import reference_entry


def negation_orbits(dim: DimVector) -> list[tuple[GroupElement, ...]]:
    """Orbits {g, -g} of the nonzero elements, in lexicographic order."""

    seen: set[GroupElement] = set()
    orbits: list[tuple[GroupElement, ...]] = []
    for x in dim.elements():
        if x == dim.zero or x in seen:
            continue
        neg = dim.negate(x)
        orbit = (x,) if neg == x else (x, neg)
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def connection_set_from_mask(
    dim: DimVector, orbits: list[tuple[GroupElement, ...]], mask: int
) -> ConnectionSet:
    elements = frozenset(
        x for i, orbit in enumerate(orbits) if (mask >> i) & 1 for x in orbit
    )
    return ConnectionSet(dim, elements)


def enumerate_connection_sets(
    dim: DimVector, dedup: bool = False, *, include_empty: bool = False
) -> Iterator[ConnectionSet]:
    """Every inverse-closed zero-free subset, one include/exclude bit per orbit.

    With ``dedup`` only the first member of each unit-multiplier orbit is
    emitted, as its canonical form.
    """

    orbits = negation_orbits(dim)
    maps = symmetry_maps(dim) if dedup else None
    seen: set[frozenset[GroupElement]] = set()
    start = 0 if include_empty else 1
    for mask in range(start, 1 << len(orbits)):
        conn = connection_set_from_mask(dim, orbits, mask)
        if dedup:
            conn = canonical_form(dim, conn, maps)
            if conn.elements in seen:
                continue
            seen.add(conn.elements)
        yield conn


@dataclass(slots=True)
class ClassificationRow:
    """Best distance over every connection set of one dimension vector."""

    n: int
    dim: DimVector
    d_max: int
    count: int
    by_type: dict[str, int] = field(default_factory=dict)
    examined: int = 0
    skipped: int = 0
    elapsed: float = 0.0
    reference: int | None = None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return self.skipped > 0

    @property
    def matches_reference(self) -> bool | None:
        if self.reference is None:
            return None
        return self.d_max == self.reference

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "N": list(self.dim.moduli),
            "dMax": self.d_max,
            "count": self.count,
            "byType": self.by_type,
            "examined": self.examined,
            "skipped": self.skipped,
            "partial": self.partial,
            "reference": self.reference,
            "matchesReference": self.matches_reference,
        }

    def csv_row(self) -> tuple[Any, ...]:
        return (
            self.n,
            "x".join(str(m) for m in self.dim.moduli),
            self.d_max,
            self.count,
            f"{self.elapsed:.2f}",
        )


def classify(
    dim: DimVector,
    budget: int = DEFAULT_WORK_BUDGET,
    *,
    threads: int = 1,
    dedup: bool = True,
    include_empty: bool = False,
    candidates: Iterable[ConnectionSet] | None = None,
) -> ClassificationRow:
    """d_max over all connection sets of ``dim`` and the number of sets reaching it.

    Each code is first tested against the best distance of its type found so
    far; only survivors get an exact distance. ``candidates`` replaces the
    default enumeration; the row does not depend on its order.
    """

    started = time.perf_counter()
    best_by_type = {CodeType.TYPE_I: 0, CodeType.TYPE_II: 0}
    count_by_type = {CodeType.TYPE_I: 0, CodeType.TYPE_II: 0}
    examined = skipped = 0
    if candidates is None:
        candidates = enumerate_connection_sets(dim, dedup, include_empty=include_empty)
    for conn in candidates:
        examined += 1
        graph = MdcGraph(dim, conn)
        kind = code_type(graph)
        code = code_from_graph(graph.adjacency)
        floor = best_by_type[kind]
        if floor > 1 and not min_distance_at_least(code, floor, threads=threads):
            continue
        try:
            report = min_distance_exact(code, budget, threads=threads)
        except BudgetExceeded:
            skipped += 1
            continue
        d = report.lower
        if d > floor:
            best_by_type[kind] = d
            count_by_type[kind] = 1
        elif d == floor:
            count_by_type[kind] += 1

    d_max = max(best_by_type.values())
    count = sum(
        count_by_type[kind] for kind, d in best_by_type.items() if d == d_max and d > 0
    )
    entry = reference_entry(dim.moduli)
    row = ClassificationRow(
        n=dim.n,
        dim=dim,
        d_max=d_max,
        count=count,
        by_type={kind.value: d for kind, d in best_by_type.items() if d},
        examined=examined,
        skipped=skipped,
        elapsed=time.perf_counter() - started,
        reference=entry.d_max if entry else None,
    )
    if row.partial:
        row.diagnostics.append(
            Diagnostic("warning", f"{skipped} connection sets exceeded the work budget")
        )
    if row.matches_reference is False:
        row.diagnostics.append(
            Diagnostic(
                "warning",
                f"d_max {d_max} differs from reference {row.reference}"
                + (f" (table text: {entry.note})" if entry and entry.note else ""),
            )
        )
    logger.info(
        "classified {}: d_max {} ({} sets, {} examined)", dim, d_max, count, examined
    )
    return row
