from __future__ import annotations

from importlib import resources
from itertools import combinations
from math import comb
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdcq.codes.graph_code import GraphCode, code_from_graph, codeword, iter_codewords
from mdcq.diagnostics import BudgetExceeded, MdcqError
from mdcq.distance.combinations import level_order, revolving_door, work_up_to
from mdcq.distance.enumerator import (
    DistanceReport,
    WeightDistribution,
    distance_bounds,
    gray_walk_closes,
    low_weight_census,
    min_distance_at_least,
    min_distance_exact,
    symplectic_weight,
    weight_distribution_full,
)
from mdcq.graph.core import DimVector, MdcGraph
from mdcq.search.classify import connection_set_from_mask, negation_orbits
from mdcq.search.manifest import ManifestEntry, load_manifest


ORACLE_DIMS = [(2, 2), (2, 3), (3, 3), (2, 4), (2, 5), (3, 4), (2, 6), (2, 7), (3, 5), (2, 8), (4, 4)]


def random_code(dim: DimVector, rng: np.random.Generator) -> tuple[MdcGraph, GraphCode]:
    orbits = negation_orbits(dim)
    mask = int(rng.integers(0, 1 << len(orbits)))
    graph = MdcGraph(dim, connection_set_from_mask(dim, orbits, mask))
    return graph, code_from_graph(graph)


def brute_distribution(code: GraphCode) -> list[int]:
    counts = [0] * (code.n + 1)
    for word in iter_codewords(code):
        counts[word.weight] += 1
    return counts


def brute_distance(code: GraphCode) -> int:
    counts = brute_distribution(code)
    return next(w for w in range(1, code.n + 1) if counts[w])


def code_for(moduli, compact) -> GraphCode:
    return code_from_graph(MdcGraph.from_compact(DimVector(moduli), compact))


@pytest.mark.parametrize("m,r", [(4, 2), (5, 3), (6, 1), (6, 4), (7, 3), (8, 5), (5, 0), (5, 5)])
def test_revolving_door_visits_each_subset_once(m: int, r: int) -> None:
    order = list(revolving_door(m, r))

    assert len(order) == comb(m, r)
    assert len(set(order)) == len(order)
    for before, after in zip(order, order[1:]):
        assert len(set(before) ^ set(after)) == 2


def test_revolving_door_small_orders() -> None:
    assert list(revolving_door(4, 2)) == [(0, 1), (1, 2), (0, 2), (2, 3), (1, 3), (0, 3)]


def test_level_order_covers_the_level() -> None:
    seen = [tuple(sorted(c)) for c in level_order(7, 3)]

    assert sorted(seen) == sorted(combinations(range(7), 3))
    assert [c[-1] for c in level_order(5, 2)] == sorted(c[-1] for c in level_order(5, 2))
    assert work_up_to(6, 2) == 6 + 15


def test_edgeless_code_has_distance_one() -> None:
    code = code_for((2, 2), [[], []])
    report = min_distance_exact(code, witness=True)

    assert report.exact
    assert report.distance == 1
    assert report.witness == (0,)


def test_complete_graph_code() -> None:
    # K_4 = Gamma((2,2), all nonzero elements)
    code = code_for((2, 2), [[2], [1, 2]])

    assert min_distance_exact(code).distance == 2
    assert weight_distribution_full(code).counts == (1, 0, 6, 0, 9)


def test_oracle_agreement_on_random_graphs() -> None:
    rng = np.random.default_rng(2024)
    for i in range(200):
        dim = DimVector(ORACLE_DIMS[i % len(ORACLE_DIMS)])
        graph, code = random_code(dim, rng)
        expected = brute_distribution(code)
        d = next(w for w in range(1, code.n + 1) if expected[w])

        report = min_distance_exact(code, witness=True)
        assert report.distance == d
        assert symplectic_weight(codeword(code, list(_bits(code.n, report.witness)))) == d

        census = low_weight_census(code, min(code.n, d + 1))
        assert list(census.counts) == expected[: census.upto + 1]

        if i % 5 == 0:
            full = weight_distribution_full(code)
            assert list(full.counts) == expected
            full.check(type_ii=graph.valency % 2 == 1)


def _bits(n: int, witness) -> list[int]:
    chosen = set(witness)
    return [1 if i in chosen else 0 for i in range(n)]


def test_threads_do_not_change_results() -> None:
    rng = np.random.default_rng(11)
    for moduli in [(2, 7), (3, 5), (4, 4)]:
        _, code = random_code(DimVector(moduli), rng)
        single = min_distance_exact(code, threads=1, witness=True)
        pooled = min_distance_exact(code, threads=4, witness=True)
        assert single == pooled
        assert low_weight_census(code, 5, threads=1) == low_weight_census(code, 5, threads=3)
        assert weight_distribution_full(code, threads=1) == weight_distribution_full(
            code, threads=4
        )


def test_min_distance_at_least() -> None:
    rng = np.random.default_rng(5)
    for moduli in [(2, 3), (3, 4), (2, 6), (2, 7)]:
        _, code = random_code(DimVector(moduli), rng)
        d = brute_distance(code)
        assert min_distance_at_least(code, d)
        assert min_distance_at_least(code, 1)
        assert not min_distance_at_least(code, d + 1)


def test_distance_bounds_bracket_the_distance() -> None:
    rng = np.random.default_rng(9)
    for moduli in [(2, 5), (3, 4), (2, 7), (4, 4)]:
        _, code = random_code(DimVector(moduli), rng)
        d = brute_distance(code)
        full = distance_bounds(code, code.n)
        assert full.exact and full.lower == d
        for radius in range(0, 4):
            report = distance_bounds(code, radius, 64, seed=radius)
            assert report.lower <= d <= report.upper
            assert report.lower <= radius + 1


SMALL_DIMS = [(2, 3), (3, 3), (2, 4), (2, 5), (3, 4), (2, 6), (2, 7), (3, 5), (2, 8), (4, 4)]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL_DIMS), st.integers(0, 2**32 - 1), st.integers(0, 8))
def test_bounds_upper_never_exceeds_a_generator(moduli, seed, samples) -> None:
    _, code = random_code(DimVector(moduli), np.random.default_rng(seed))
    report = distance_bounds(code, 0, samples, seed=seed, witness=True)

    assert report.upper <= 1 + max(row.bit_count() for row in code.zrows)
    assert report.witness is not None
    assert symplectic_weight(codeword(code, _bits(code.n, report.witness))) == report.upper


@pytest.mark.parametrize("moduli,mask", [((2, 6), 13), ((2, 7), 3), ((2, 7), 22)])
def test_bounds_upper_capped_when_sampling_stalls(moduli, mask: int) -> None:
    dim = DimVector(moduli)
    graph = MdcGraph(dim, connection_set_from_mask(dim, negation_orbits(dim), mask))
    code = code_from_graph(graph)

    report = distance_bounds(code, 0, 4, seed=mask)

    assert report.upper <= 1 + graph.valency


def test_bounds_lower_grows_with_radius() -> None:
    rng = np.random.default_rng(21)
    for moduli in [(2, 6), (3, 4), (2, 8), (4, 4)]:
        _, code = random_code(DimVector(moduli), rng)
        lowers = [distance_bounds(code, radius, 16).lower for radius in range(code.n + 1)]
        assert lowers == sorted(lowers)
        assert lowers[-1] == brute_distance(code)


def test_distance_bounds_stop_at_last_complete_level() -> None:
    code = code_for((2, 5), [[2, 5], [1, 3, 4]])
    report = distance_bounds(code, 4, 16, work_budget=10 + 45 - 1)

    assert report.radius == 1
    assert report.budget_used == 10
    assert report.lower <= 2


def test_exact_budget_exhaustion_carries_partial_report() -> None:
    code = code_for((2, 3), [[2, 3], [1]])

    with pytest.raises(BudgetExceeded) as info:
        min_distance_exact(code, effort_cap=6)
    partial = info.value.partial
    assert isinstance(partial, DistanceReport)
    assert partial.radius == 1
    assert not partial.exact


def test_census_budget_exhaustion_carries_prefix() -> None:
    code = code_for((2, 3), [[2, 3], [1]])

    with pytest.raises(BudgetExceeded) as info:
        low_weight_census(code, 4, budget=6 + 15)
    partial = info.value.partial
    assert isinstance(partial, WeightDistribution)
    assert partial.upto == 2


def test_full_distribution_cap() -> None:
    code = code_for((2, 3), [[2, 3], [1]])

    with pytest.raises(BudgetExceeded):
        weight_distribution_full(code, cap=5)


def test_gray_walk_returns_to_start() -> None:
    code = code_for((2, 4), [[2, 4], [1]])

    visits, closed = gray_walk_closes(code)
    assert visits == 2**8
    assert closed


def test_distance_report_rejects_inverted_interval() -> None:
    with pytest.raises(MdcqError):
        DistanceReport(lower=5, upper=4, exact=False, radius=4, budget_used=0)


def test_weight_distribution_check_flags_odd_weights() -> None:
    with pytest.raises(MdcqError):
        WeightDistribution(2, (1, 2, 1)).check(type_ii=True)
    WeightDistribution(2, (1, 0, 3)).check(type_ii=True)


def test_multiword_rows_match_brute_force() -> None:
    # n = 70 needs two packed words per row
    code = code_for((2, 35), [[2, 35], [1]])

    census = low_weight_census(code, 3)
    assert census.counts[:2] == (1, 0)
    assert min_distance_exact(code).distance == brute_force_low_weight(code, 3)


def brute_force_low_weight(code: GraphCode, limit: int) -> int:
    """Minimum weight over combinations of popcount <= limit.

    Equals d whenever some generator has weight limit + 1 or less.
    """

    best = code.n + 1
    for size in range(1, limit + 1):
        for combo in combinations(range(code.n), size):
            best = min(best, codeword(code, _bits(code.n, combo)).weight)
    return best


def shipped_entries() -> dict[str, ManifestEntry]:
    path = Path(str(resources.files("mdcq") / "data" / "props.jsonl"))
    return {entry.name: entry for entry in load_manifest(path)}


@pytest.mark.slow
@pytest.mark.parametrize("name", ["gamma_36_1", "gamma_36_2"])
def test_length_36_codes(name: str) -> None:
    entry = shipped_entries()[name]
    code = code_for(entry.dim.moduli, entry.compact.as_lists())

    assert min_distance_exact(code, threads=8).distance == 12
    assert low_weight_census(code, 12, threads=8)[12] == entry.expect.weights[12]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["gamma_77", "gamma_90"])
def test_long_codes_certified_to_radius_seven(name: str) -> None:
    entry = shipped_entries()[name]
    code = code_for(entry.dim.moduli, entry.compact.as_lists())
    report = distance_bounds(code, 7, threads=8)

    assert report.radius == 7
    assert report.lower >= 8
    assert not report.exact
