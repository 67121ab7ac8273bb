from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdcq.diagnostics import InvalidGraphError, NotAUnitError, ShapeError
from mdcq.graph import iso
from mdcq.graph.core import DimVector, MdcGraph
from mdcq.search.classify import connection_set_from_mask, negation_orbits


def random_graph(dim: DimVector, rng: np.random.Generator) -> MdcGraph:
    orbits = negation_orbits(dim)
    mask = int(rng.integers(0, 1 << len(orbits)))
    return MdcGraph(dim, connection_set_from_mask(dim, orbits, mask))


COPRIME_DIMS = [(2, 3), (3, 4), (2, 5), (4, 5), (3, 5), (2, 3, 5), (5, 7), (7, 9)]
FOUR_TWO_DIMS = [(4, 2), (4, 2, 2), (4, 2, 2, 2), (4, 2, 2, 2, 2)]
UNIT_DIMS = [(5,), (2, 9), (3, 8), (4, 9), (7, 8), (6, 6), (3, 3, 5)]


def test_collapse_small_example() -> None:
    graph = MdcGraph.from_elements(DimVector.of(2, 3), [(1, 0), (0, 1)])
    circulant = iso.coprime_collapse(graph.dim, graph.conn)

    # phi(x, y) = 3x + 2y mod 6
    assert circulant.order == 6
    assert circulant.connection == {3, 2, 4}
    assert iso.is_circulant_matrix(circulant.adjacency())
    assert iso.verify_collapse(graph)


def test_collapse_requires_coprime_moduli() -> None:
    graph = MdcGraph.from_elements(DimVector.of(2, 4), [(1, 0)])

    with pytest.raises(ShapeError):
        iso.coprime_collapse(graph.dim, graph.conn)


@pytest.mark.parametrize("moduli", COPRIME_DIMS)
def test_collapse_preserves_adjacency(moduli) -> None:
    rng = np.random.default_rng(sum(moduli))
    dim = DimVector(moduli)
    for _ in range(15):
        graph = random_graph(dim, rng)
        assert iso.verify_collapse(graph)
        circulant = iso.coprime_collapse(dim, graph.conn)
        assert iso.is_circulant_matrix(circulant.adjacency())


@pytest.mark.parametrize("moduli", UNIT_DIMS)
def test_unit_maps_preserve_adjacency(moduli) -> None:
    rng = np.random.default_rng(len(moduli) * 31 + moduli[-1])
    dim = DimVector(moduli)
    for _ in range(15):
        graph = random_graph(dim, rng)
        alphas = tuple(int(rng.choice(iso.units(m))) for m in moduli)
        assert iso.verify_unit_map(graph, alphas)
        assert len(iso.unit_map(dim, graph.conn, alphas)) == graph.valency


def test_unit_map_rejects_non_units() -> None:
    graph = MdcGraph.from_elements(DimVector.of(2, 9), [(1, 0)])

    with pytest.raises(NotAUnitError):
        iso.unit_map(graph.dim, graph.conn, (1, 3))
    with pytest.raises(ShapeError):
        iso.unit_map(graph.dim, graph.conn, (1,))


@pytest.mark.parametrize("moduli", FOUR_TWO_DIMS)
def test_four_to_two_preserves_adjacency(moduli) -> None:
    rng = np.random.default_rng(len(moduli))
    dim = DimVector(moduli)
    for _ in range(25):
        graph = random_graph(dim, rng)
        target, image = iso.four_to_two(dim, graph.conn)
        assert target.moduli == (2,) * (len(moduli) + 1)
        assert len(image) == graph.valency
        assert iso.verify_four_to_two(graph)


def test_four_to_two_rejects_other_shapes() -> None:
    graph = MdcGraph.from_elements(DimVector.of(2, 4), [(1, 0)])

    with pytest.raises(ShapeError):
        iso.four_to_two(graph.dim, graph.conn)


def test_cube_is_four_two_image_of_z4_z2() -> None:
    # Q3 is Gamma((2,2,2), unit vectors); its preimage has S = {1, 3} x {0} + (0, 1)
    graph = MdcGraph.from_elements(DimVector.of(4, 2), [(1, 0), (3, 0), (0, 1)])
    target, image = iso.four_to_two(graph.dim, graph.conn)

    assert image.elements == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert iso.verify_four_to_two(graph)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([(2, 18), (3, 4), (4, 9), (5, 6), (6, 6), (9, 10), (2, 2)]),
    st.integers(0, 2**32 - 1),
)
def test_metacirculant_conditions_hold(moduli, seed) -> None:
    dim = DimVector(moduli)
    graph = random_graph(dim, np.random.default_rng(seed))
    spec = iso.to_metacirculant(dim, graph.conn)

    assert spec.alpha == 1
    assert spec.violations() == []
    assert iso.verify_metacirculant(graph)


def test_metacirculant_needs_two_dimensions() -> None:
    graph = MdcGraph.from_elements(DimVector.of(3, 2, 2), [(1, 0, 0)])

    with pytest.raises(ShapeError):
        iso.to_metacirculant(graph.dim, graph.conn)


def test_metacirculant_validate_reports_broken_sets() -> None:
    spec = iso.MetacirculantSpec(m=2, n=5, alpha=1, sets=(frozenset({1}), frozenset({2})))

    problems = spec.violations()
    assert "S_0 != -S_0" in problems
    assert any(p.startswith("alpha^(m/2)") for p in problems)
    with pytest.raises(InvalidGraphError):
        spec.validate()


def test_dimension_classes_of_36() -> None:
    classes = iso.enumerate_dimension_vectors(36)

    assert [c.canonical for c in classes] == [
        (4, 9),
        (2, 2, 9),
        (3, 3, 4),
        (2, 2, 3, 3),
    ]
    reps = {c.canonical: {d.moduli for d in c.representatives} for c in classes}
    assert reps[(4, 9)] == {(4, 9), (36,)}
    assert reps[(2, 2, 3, 3)] == {(2, 2, 3, 3), (2, 3, 6), (6, 6)}


def test_dimension_classes_of_prime_power() -> None:
    classes = iso.enumerate_dimension_vectors(8)

    assert [c.canonical for c in classes] == [(8,), (2, 4), (2, 2, 2)]
    with pytest.raises(InvalidGraphError):
        iso.enumerate_dimension_vectors(1)


def test_representatives_are_isomorphic_by_collapse() -> None:
    rng = np.random.default_rng(7)
    dim = DimVector.of(4, 9)
    for _ in range(10):
        assert iso.verify_collapse(random_graph(dim, rng))


def test_canonical_form_is_orbit_invariant() -> None:
    rng = np.random.default_rng(3)
    dim = DimVector.of(3, 5)
    for _ in range(20):
        graph = random_graph(dim, rng)
        alphas = (int(rng.choice([1, 2])), int(rng.choice([1, 2, 3, 4])))
        image = iso.unit_map(dim, graph.conn, alphas)
        assert iso.canonical_form(dim, graph.conn) == iso.canonical_form(dim, image)


def test_coordinate_permutations_only_swap_equal_moduli() -> None:
    assert iso.coordinate_permutations(DimVector.of(2, 3, 2)) == [(0, 1, 2), (2, 1, 0)]


def test_is_isomorphism_rejects_non_bijection() -> None:
    a = iso.build_circulant(4, {1, 3})

    assert iso.is_isomorphism(a, a, [0, 1, 2, 3])
    assert not iso.is_isomorphism(a, a, [0, 0, 2, 3])
