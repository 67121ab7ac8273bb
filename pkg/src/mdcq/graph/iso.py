"""Isomorphism maps between MDC, circulant and metacirculant presentations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import gcd, prod
from typing import Any, Iterator, Sequence

import numpy as np

from ..diagnostics import InvalidGraphError, NotAUnitError, ShapeError
from .core import (
    AdjacencyMatrix,
    ConnectionSet,
    DimVector,
    GroupElement,
    MdcGraph,
    build_adjacency,
)


@dataclass(frozen=True, slots=True)
class CirculantSpec:
    """C(n, S) on Z_n."""

    order: int
    connection: frozenset[int]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise InvalidGraphError("circulant order must be positive")
        for s in self.connection:
            if not 0 <= s < self.order:
                raise InvalidGraphError(f"{s} is not reduced modulo {self.order}")
        if 0 in self.connection:
            raise InvalidGraphError("circulant connection set contains 0")
        for s in self.connection:
            if (-s) % self.order not in self.connection:
                raise InvalidGraphError("circulant connection set is not symmetric")

    def adjacency(self) -> np.ndarray:
        return build_circulant(self.order, self.connection)

    def to_dict(self) -> dict[str, Any]:
        return {"order": self.order, "S": sorted(self.connection)}


def build_circulant(order: int, connection: frozenset[int] | set[int]) -> np.ndarray:
    """Adjacency of C(n, S): bit (x, y) set iff x - y mod n lies in S."""

    mask = np.zeros(order, dtype=bool)
    for s in connection:
        mask[s % order] = True
    idx = np.arange(order)
    return mask[(idx[:, None] - idx[None, :]) % order].astype(np.uint8)


def is_circulant_matrix(matrix: np.ndarray) -> bool:
    """Every row is the right cyclic shift of the row above."""

    bits = np.asarray(matrix)
    return all(
        np.array_equal(bits[i], np.roll(bits[i - 1], 1)) for i in range(1, bits.shape[0])
    )


def is_isomorphism(
    source: AdjacencyMatrix | np.ndarray,
    target: AdjacencyMatrix | np.ndarray,
    vertex_map: Sequence[int] | np.ndarray,
) -> bool:
    """Check ``source[u, v] == target[f(u), f(v)]`` for all pairs, f a bijection."""

    a = source.bits if isinstance(source, AdjacencyMatrix) else np.asarray(source)
    b = target.bits if isinstance(target, AdjacencyMatrix) else np.asarray(target)
    perm = np.asarray(vertex_map, dtype=np.int64)
    if a.shape != b.shape or perm.shape != (a.shape[0],):
        return False
    if len(set(perm.tolist())) != perm.size:
        return False
    return bool(np.array_equal(b[np.ix_(perm, perm)], a))


# --- coprime collapse -------------------------------------------------------


def _require_pairwise_coprime(dim: DimVector) -> None:
    for i, a in enumerate(dim.moduli):
        for b in dim.moduli[i + 1 :]:
            if gcd(a, b) != 1:
                raise ShapeError(f"moduli {a} and {b} of {dim} are not coprime")


def _fold(dim: DimVector, x: GroupElement) -> int:
    # phi(x, y) = n x + m y mod mn, folded left to right
    value, modulus = x[0], dim.moduli[0]
    for coord, nxt in zip(x[1:], dim.moduli[1:]):
        value = (nxt * value + modulus * coord) % (modulus * nxt)
        modulus *= nxt
    return value


def coprime_collapse(dim: DimVector, conn: ConnectionSet) -> CirculantSpec:
    """Map Gamma(N, S) with pairwise coprime moduli onto C(n, phi(S))."""

    _require_pairwise_coprime(dim)
    return CirculantSpec(dim.n, frozenset(_fold(dim, x) for x in conn.elements))


def coprime_vertex_map(dim: DimVector) -> np.ndarray:
    _require_pairwise_coprime(dim)
    return np.array([_fold(dim, x) for x in dim.elements()], dtype=np.int64)


# --- unit multipliers -------------------------------------------------------


def units(modulus: int) -> list[int]:
    return [a for a in range(1, modulus) if gcd(a, modulus) == 1] or [1]


def _check_units(dim: DimVector, alphas: Sequence[int]) -> tuple[int, ...]:
    if len(alphas) != dim.k:
        raise ShapeError(f"expected {dim.k} multipliers, got {len(alphas)}")
    reduced = tuple(a % m for a, m in zip(alphas, dim.moduli))
    for a, m in zip(reduced, dim.moduli):
        if gcd(a, m) != 1:
            raise NotAUnitError(f"{a} is not a unit modulo {m}")
    return reduced


def _scale(dim: DimVector, alphas: Sequence[int], x: GroupElement) -> GroupElement:
    return tuple((a * c) % m for a, c, m in zip(alphas, x, dim.moduli))


def unit_map(
    dim: DimVector, conn: ConnectionSet, alphas: Sequence[int]
) -> ConnectionSet:
    """sigma(S) with sigma(a_1..a_k) = (alpha_1 a_1, ..., alpha_k a_k)."""

    alphas = _check_units(dim, alphas)
    return ConnectionSet(
        dim, frozenset(_scale(dim, alphas, x) for x in conn.elements)
    )


def unit_vertex_map(dim: DimVector, alphas: Sequence[int]) -> np.ndarray:
    alphas = _check_units(dim, alphas)
    return np.array(
        [dim.index(_scale(dim, alphas, x)) for x in dim.elements()], dtype=np.int64
    )


# --- (4, 2, ..., 2) -> (2, 2, ..., 2) ---------------------------------------

_FOUR_TO_TWO = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}


def _require_four_two(dim: DimVector) -> DimVector:
    if dim.moduli[0] != 4 or any(m != 2 for m in dim.moduli[1:]):
        raise ShapeError(f"{dim} is not of the form (4, 2, ..., 2)")
    return DimVector((2,) * (dim.k + 1))


def _four_two_point(x: GroupElement) -> GroupElement:
    return (*_FOUR_TO_TWO[x[0]], *x[1:])


def four_to_two(
    dim: DimVector, conn: ConnectionSet
) -> tuple[DimVector, ConnectionSet]:
    target = _require_four_two(dim)
    image = frozenset(_four_two_point(x) for x in conn.elements)
    return target, ConnectionSet(target, image)


def four_to_two_vertex_map(dim: DimVector) -> np.ndarray:
    target = _require_four_two(dim)
    return np.array(
        [target.index(_four_two_point(x)) for x in dim.elements()], dtype=np.int64
    )


# --- metacirculant ----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class MetacirculantSpec:
    """Gamma(m, n, alpha, S_0, ..., S_{floor(m/2)}) on Z_m x Z_n."""

    m: int
    n: int
    alpha: int
    sets: tuple[frozenset[int], ...]

    def scaled(self, power: int, k: int) -> frozenset[int]:
        factor = pow(self.alpha, power, self.n)
        return frozenset((factor * s) % self.n for s in self.sets[k])

    def violations(self) -> list[str]:
        """Names of the metacirculant set conditions that fail."""

        problems: list[str] = []
        if gcd(self.alpha, self.n) != 1:
            problems.append("alpha is not a unit")
        if len(self.sets) != self.m // 2 + 1:
            problems.append("wrong number of sets")
            return problems
        s0 = self.sets[0]
        if frozenset((-s) % self.n for s in s0) != s0:
            problems.append("S_0 != -S_0")
        if 0 in s0:
            problems.append("0 in S_0")
        for k in range(1, self.m // 2 + 1):
            if self.scaled(self.m, k) != self.sets[k]:
                problems.append(f"alpha^m S_{k} != S_{k}")
        if self.m % 2 == 0 and self.m >= 2:
            half = self.m // 2
            negated = frozenset((-s) % self.n for s in self.sets[half])
            if self.scaled(half, half) != negated:
                problems.append(f"alpha^(m/2) S_{half} != -S_{half}")
        return problems

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise InvalidGraphError("invalid metacirculant: " + "; ".join(problems))

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "n": self.n,
            "alpha": self.alpha,
            "S": [sorted(s) for s in self.sets],
        }


def metacirculant_adjacency(spec: MetacirculantSpec) -> np.ndarray:
    """(i, j) ~ (i + k, h) iff h - j lies in alpha^i S_k, 0 <= k <= floor(m/2)."""

    m, n = spec.m, spec.n
    half = m // 2
    table = {
        (i, k): spec.scaled(i, k) for i in range(m) for k in range(half + 1)
    }
    bits = np.zeros((m * n, m * n), dtype=np.uint8)
    for a1, b1, a2, b2 in product(range(m), range(n), range(m), range(n)):
        d = (a2 - a1) % m
        back = (a1 - a2) % m
        adjacent = (d <= half and (b2 - b1) % n in table[(a1, d)]) or (
            back <= half and (b1 - b2) % n in table[(a2, back)]
        )
        if adjacent:
            bits[a1 * n + b1, a2 * n + b2] = 1
    return bits


def to_metacirculant(dim: DimVector, conn: ConnectionSet) -> MetacirculantSpec:
    """S_i = {s : (i, s) in S} for 0 <= i <= floor(m/2), alpha = 1."""

    if dim.k != 2:
        raise ShapeError(f"metacirculant form needs a two-dimensional graph, got {dim}")
    m, n = dim.moduli
    sets = tuple(
        frozenset(x[1] for x in conn.elements if x[0] == i) for i in range(m // 2 + 1)
    )
    spec = MetacirculantSpec(m=m, n=n, alpha=1, sets=sets)
    spec.validate()
    return spec


# --- dimension vector classes -----------------------------------------------


def factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _integer_partitions(e: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = e if largest is None else largest
    if e == 0:
        yield ()
        return
    for part in range(min(e, largest), 0, -1):
        for rest in _integer_partitions(e - part, part):
            yield (part, *rest)


def _prime_of(q: int) -> int:
    return min(factorize(q))


def _coprime_groupings(powers: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Every way of multiplying pairwise-coprime prime powers into moduli."""

    results: set[tuple[int, ...]] = set()

    def place(index: int, groups: list[list[int]]) -> None:
        if index == len(powers):
            results.add(tuple(sorted(prod(g) for g in groups)))
            return
        q = powers[index]
        p = _prime_of(q)
        for group in groups:
            if all(_prime_of(r) != p for r in group):
                group.append(q)
                place(index + 1, groups)
                group.pop()
        groups.append([q])
        place(index + 1, groups)
        groups.pop()

    place(0, [])
    return results


@dataclass(frozen=True, slots=True)
class DimClass:
    """A multiset of prime powers with product n, plus its coprime regroupings."""

    canonical: tuple[int, ...]
    representatives: tuple[DimVector, ...]

    @property
    def n(self) -> int:
        return prod(self.canonical)

    def to_dict(self) -> dict[str, Any]:
        return {
            "canonical": list(self.canonical),
            "representatives": [list(d.moduli) for d in self.representatives],
        }


def dim_class_representatives(canonical: Sequence[int]) -> tuple[DimVector, ...]:
    groupings = _coprime_groupings(tuple(sorted(canonical)))
    return tuple(
        DimVector(g) for g in sorted(groupings, key=lambda g: (-len(g), g))
    )


def enumerate_dimension_vectors(n: int) -> list[DimClass]:
    """All multisets of prime powers multiplying to ``n``."""

    if n < 2:
        raise InvalidGraphError(f"cannot enumerate dimension vectors for n = {n}")
    per_prime = [
        [tuple(p**part for part in parts) for parts in _integer_partitions(e)]
        for p, e in sorted(factorize(n).items())
    ]
    classes = []
    for choice in product(*per_prime):
        canonical = tuple(sorted(q for group in choice for q in group))
        classes.append(DimClass(canonical, dim_class_representatives(canonical)))
    return sorted(classes, key=lambda c: (len(c.canonical), c.canonical))


# --- canonical forms for deduplication --------------------------------------


def coordinate_permutations(dim: DimVector) -> list[tuple[int, ...]]:
    """Permutations of coordinate positions that only swap equal moduli."""

    return [
        perm
        for perm in permutations(range(dim.k))
        if all(dim.moduli[perm[i]] == dim.moduli[i] for i in range(dim.k))
    ]


def symmetry_maps(dim: DimVector) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (unit tuple, coordinate permutation) pairs acting on ``dim``."""

    unit_tuples = list(product(*(units(m) for m in dim.moduli)))
    return [(alphas, perm) for alphas in unit_tuples for perm in coordinate_permutations(dim)]


def _image_key(
    dim: DimVector,
    elements: frozenset[GroupElement],
    alphas: tuple[int, ...],
    perm: tuple[int, ...],
) -> tuple[GroupElement, ...]:
    image = []
    for x in elements:
        scaled = _scale(dim, alphas, x)
        image.append(tuple(scaled[perm[i]] for i in range(dim.k)))
    return tuple(sorted(image))


def canonical_form(
    dim: DimVector,
    conn: ConnectionSet,
    maps: list[tuple[tuple[int, ...], tuple[int, ...]]] | None = None,
) -> ConnectionSet:
    """Lexicographically least image of S under unit multipliers and equal-moduli swaps."""

    maps = symmetry_maps(dim) if maps is None else maps
    best = min(_image_key(dim, conn.elements, alphas, perm) for alphas, perm in maps)
    return ConnectionSet(dim, frozenset(best))


def verify_collapse(graph: MdcGraph) -> bool:
    circulant = coprime_collapse(graph.dim, graph.conn)
    return is_isomorphism(
        graph.adjacency, circulant.adjacency(), coprime_vertex_map(graph.dim)
    )


def verify_unit_map(graph: MdcGraph, alphas: Sequence[int]) -> bool:
    image = unit_map(graph.dim, graph.conn, alphas)
    return is_isomorphism(
        graph.adjacency,
        build_adjacency(graph.dim, image),
        unit_vertex_map(graph.dim, alphas),
    )


def verify_four_to_two(graph: MdcGraph) -> bool:
    target, image = four_to_two(graph.dim, graph.conn)
    return is_isomorphism(
        graph.adjacency,
        build_adjacency(target, image),
        four_to_two_vertex_map(graph.dim),
    )


def verify_metacirculant(graph: MdcGraph) -> bool:
    spec = to_metacirculant(graph.dim, graph.conn)
    return bool(np.array_equal(metacirculant_adjacency(spec), graph.adjacency.bits))
