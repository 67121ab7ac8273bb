"""Seeded randomized search for connection sets reaching a target distance."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
from loguru import logger

from ..codes.graph_code import CodeType, GraphCode, code_from_graph, code_type
from ..diagnostics import BudgetExceeded, MdcqError, SpecError
from ..distance.enumerator import (
    DEFAULT_SAMPLER_BUDGET,
    DEFAULT_WORK_BUDGET,
    DistanceReport,
    distance_bounds,
    low_weight_census,
    min_distance_at_least,
)
from ..graph.core import CompactConnectionSet, DimVector, GroupElement, MdcGraph
from ..graph.iso import canonical_form, symmetry_maps
from .classify import connection_set_from_mask, negation_orbits
from .tables import reference_entry


@dataclass(frozen=True, slots=True)
class SearchRecord:
    """One connection set that met the search target."""

    dim: DimVector
    compact: CompactConnectionSet
    valency: int
    code_type: CodeType
    distance: DistanceReport
    fingerprint: tuple[int, ...] = field(default=())
    iteration: int = 0

    def __post_init__(self) -> None:
        odd = self.valency % 2 == 1
        if odd != (self.code_type is CodeType.TYPE_II):
            raise MdcqError(
                f"valency {self.valency} inconsistent with Type {self.code_type.value}"
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "N": list(self.dim.moduli),
            "S_compact": self.compact.as_lists(),
            "valency": self.valency,
            "type": self.code_type.value,
            "distance": self.distance.to_dict(),
            "fingerprint": list(self.fingerprint),
            "iteration": self.iteration,
        }


def fingerprint(
    code: GraphCode,
    upto: int,
    budget: int = DEFAULT_WORK_BUDGET,
    *,
    threads: int = 1,
) -> tuple[int, ...]:
    """(W_0, ..., W_upto). Different fingerprints prove two codes inequivalent."""

    return low_weight_census(code, upto, budget, threads=threads).counts


def _odd_valency_mask(
    rng: np.random.Generator,
    mask: int,
    orbits: list[tuple[GroupElement, ...]],
    singles: list[int],
) -> int:
    valency = sum(len(orbit) for i, orbit in enumerate(orbits) if (mask >> i) & 1)
    if valency % 2 == 0:
        mask ^= 1 << singles[int(rng.integers(len(singles)))]
    return mask


def random_search(
    dim: DimVector,
    seed: int,
    iterations: int,
    target_d: int,
    *,
    odd_valency: bool = False,
    radius: int | None = None,
    sampler_budget: int = DEFAULT_SAMPLER_BUDGET,
    budget: int = DEFAULT_WORK_BUDGET,
    threads: int = 1,
) -> list[SearchRecord]:
    """Draw ``iterations`` connection sets and keep those with distance >= ``target_d``.

    Each negation orbit is included independently with probability 1/2. With
    ``odd_valency`` the parity is fixed afterwards by toggling one self-inverse
    orbit, which makes every candidate Type II. The result depends only on the
    arguments, never on ``threads``.
    """

    if iterations <= 0:
        return []
    orbits = negation_orbits(dim)
    singles = [i for i, orbit in enumerate(orbits) if len(orbit) == 1]
    if odd_valency and not singles:
        logger.warning("{} has no self-inverse elements; every valency is even", dim)
        return []

    rng = np.random.default_rng(seed)
    maps = symmetry_maps(dim)
    seen: set[frozenset[GroupElement]] = set()
    records: list[SearchRecord] = []
    for iteration in range(iterations):
        bits = rng.integers(0, 2, size=len(orbits))
        sampler_seed = int(rng.integers(2**32))
        mask = sum(1 << i for i, b in enumerate(bits.tolist()) if b)
        if odd_valency:
            mask = _odd_valency_mask(rng, mask, orbits, singles)
        if not mask:
            continue
        conn = canonical_form(dim, connection_set_from_mask(dim, orbits, mask), maps)
        if conn.elements in seen:
            continue
        seen.add(conn.elements)

        graph = MdcGraph(dim, conn)
        code = code_from_graph(graph)
        if not min_distance_at_least(code, target_d, threads=threads):
            continue
        report = distance_bounds(
            code,
            target_d if radius is None else radius,
            sampler_budget,
            work_budget=budget,
            seed=sampler_seed,
            threads=threads,
        )
        upto = report.upper if report.exact else report.radius
        try:
            prints = fingerprint(code, upto, budget, threads=threads)
        except BudgetExceeded as exc:
            prints = exc.partial.counts
        record = SearchRecord(
            dim=dim,
            compact=graph.compact(),
            valency=graph.valency,
            code_type=code_type(graph),
            distance=report,
            fingerprint=prints,
            iteration=iteration,
        )
        logger.info(
            "iteration {}: {} set with valency {} reaches d in [{}, {}]",
            iteration,
            dim,
            record.valency,
            report.lower,
            report.upper,
        )
        records.append(record)
    return records


def derived_seeds(seed: int, count: int) -> list[int]:
    """Independent child seeds, fixed by ``seed`` and the position in the list."""

    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def reference_target(dim: DimVector) -> int:
    entry = reference_entry(dim.moduli)
    if entry is None:
        raise SpecError(f"no reference distance for {dim}; give --target", field="target")
    return entry.d_max


def search_dimensions(
    dims: Sequence[DimVector],
    seed: int,
    iterations: int,
    target_d: int | None,
    **options: Any,
) -> list[SearchRecord]:
    """Run ``random_search`` on each dimension vector with its own derived seed.

    Without ``target_d`` each dimension vector aims at its reference maximum.
    """

    records: list[SearchRecord] = []
    for dim, child in zip(dims, derived_seeds(seed, len(dims))):
        if iterations <= 0:
            continue
        target = target_d if target_d is not None else reference_target(dim)
        found = random_search(dim, child, iterations, target, **options)
        logger.info("{}: {} records from {} iterations", dim, len(found), iterations)
        records.extend(found)
    return records
