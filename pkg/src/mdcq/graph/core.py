"""Multidimensional circulant graphs: dimension vectors, connection sets, adjacency."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Any, Iterable, Iterator, Sequence

import numpy as np
from loguru import logger

from ..diagnostics import InvalidGraphError, ShapeError


GroupElement = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class DimVector:
    """The moduli ``(n_1, ..., n_k)`` of the vertex group Z_{n_1} x ... x Z_{n_k}.

    Vertices are indexed lexicographically over coordinate tuples; the last
    coordinate varies fastest.
    """

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.moduli:
            raise InvalidGraphError("dimension vector needs at least one modulus")
        for modulus in self.moduli:
            if not isinstance(modulus, (int, np.integer)) or isinstance(modulus, bool):
                raise InvalidGraphError(f"modulus {modulus!r} is not an integer")
            if modulus < 2:
                raise InvalidGraphError(f"modulus {modulus} must be at least 2")
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))

    @classmethod
    def of(cls, *moduli: int) -> "DimVector":
        return cls(tuple(moduli))

    @classmethod
    def parse(cls, text: str) -> "DimVector":
        """Parse ``"2,18"`` (brackets and spaces tolerated)."""

        cleaned = text.strip().strip("[]()")
        try:
            moduli = tuple(int(part) for part in cleaned.split(",") if part.strip())
        except ValueError as exc:
            raise InvalidGraphError(f"cannot parse dimension vector {text!r}") from exc
        return cls(moduli)

    @property
    def k(self) -> int:
        return len(self.moduli)

    @property
    def n(self) -> int:
        return prod(self.moduli)

    @property
    def block_width(self) -> int:
        """Columns per top-level block, N_1 = n / n_1."""

        return self.n // self.moduli[0]

    @property
    def strides(self) -> tuple[int, ...]:
        out = []
        stride = 1
        for modulus in reversed(self.moduli):
            out.append(stride)
            stride *= modulus
        return tuple(reversed(out))

    @property
    def zero(self) -> GroupElement:
        return (0,) * self.k

    def reduce(self, coords: Sequence[int]) -> GroupElement:
        if len(coords) != self.k:
            raise InvalidGraphError(
                f"element {tuple(coords)} has {len(coords)} coordinates, expected {self.k}"
            )
        return tuple(int(c) % m for c, m in zip(coords, self.moduli))

    def negate(self, x: GroupElement) -> GroupElement:
        return tuple((-c) % m for c, m in zip(x, self.moduli))

    def sub(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return tuple((a - b) % m for a, b, m in zip(x, y, self.moduli))

    def index(self, x: GroupElement) -> int:
        return sum(c * s for c, s in zip(x, self.strides))

    def decode(self, index: int) -> GroupElement:
        coords = []
        for modulus in reversed(self.moduli):
            index, rem = divmod(index, modulus)
            coords.append(rem)
        return tuple(reversed(coords))

    def elements(self) -> Iterator[GroupElement]:
        for index in range(self.n):
            yield self.decode(index)

    def coordinates(self) -> np.ndarray:
        """All vertices as an ``(n, k)`` integer array in lexicographic order."""

        grid = np.indices(self.moduli).reshape(self.k, -1).T
        return grid.astype(np.int64)

    def __str__(self) -> str:
        return "(" + ",".join(str(m) for m in self.moduli) + ")"


@dataclass(frozen=True, slots=True)
class ConnectionSet:
    """Inverse-closed, zero-free subset S of the vertex group."""

    dim: DimVector
    elements: frozenset[GroupElement]

    def __post_init__(self) -> None:
        for x in self.elements:
            if len(x) != self.dim.k or any(
                not 0 <= c < m for c, m in zip(x, self.dim.moduli)
            ):
                raise InvalidGraphError(f"element {x} is not reduced modulo {self.dim}")
        if self.dim.zero in self.elements:
            raise InvalidGraphError("connection set contains the zero element")
        for x in self.elements:
            if self.dim.negate(x) not in self.elements:
                raise InvalidGraphError(
                    f"connection set is not closed under negation: {x} present, "
                    f"{self.dim.negate(x)} missing"
                )

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(sorted(self.elements))

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    @property
    def valency(self) -> int:
        return len(self.elements)

    def first_coordinates(self) -> frozenset[int]:
        """S_1, the set of first coordinates of the elements of S."""

        return frozenset(x[0] for x in self.elements)

    def membership(self) -> np.ndarray:
        """Boolean mask over lexicographic vertex indices."""

        mask = np.zeros(self.dim.n, dtype=bool)
        for x in self.elements:
            mask[self.dim.index(x)] = True
        return mask

    def as_lists(self) -> list[list[int]]:
        return [list(x) for x in self]


@dataclass(frozen=True, slots=True)
class CompactConnectionSet:
    """Supports (1-based) of the first row of each of the first n_1 blocks."""

    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_lists(cls, rows: Iterable[Iterable[int]]) -> "CompactConnectionSet":
        return cls(tuple(tuple(sorted(int(p) for p in row)) for row in rows))

    def check_against(self, dim: DimVector) -> None:
        if len(self.rows) != dim.moduli[0]:
            raise InvalidGraphError(
                f"compact set has {len(self.rows)} support lists, {dim} needs {dim.moduli[0]}"
            )
        width = dim.block_width
        for block, row in enumerate(self.rows):
            for position in row:
                if not 1 <= position <= width:
                    raise InvalidGraphError(
                        f"support index {position} in block {block + 1} outside [1, {width}]"
                    )

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


class AdjacencyMatrix:
    """Symmetric zero-diagonal regular 0/1 matrix attached to a dimension vector."""

    __slots__ = ("_bits", "dim")

    def __init__(self, bits: np.ndarray, dim: DimVector, *, check: bool = True) -> None:
        array = np.array(bits, dtype=np.uint8, copy=True)
        if array.shape != (dim.n, dim.n):
            raise ShapeError(f"matrix shape {array.shape} does not match n = {dim.n}")
        array.setflags(write=False)
        self._bits = array
        self.dim = dim
        if check:
            self.validate()

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def n(self) -> int:
        return self.dim.n

    def validate(self) -> None:
        bits = self._bits
        if not np.array_equal(bits, bits.T):
            raise InvalidGraphError("adjacency matrix is not symmetric")
        if bits.diagonal().any():
            raise InvalidGraphError("adjacency matrix has a nonzero diagonal")
        sums = bits.sum(axis=1)
        if sums.size and not (sums == sums[0]).all():
            raise InvalidGraphError("adjacency matrix is not regular")

    @property
    def valency(self) -> int:
        return int(self._bits[0].sum()) if self.n else 0

    def row_ints(self) -> tuple[int, ...]:
        """Rows as Python integers, bit j set when column j is 1."""

        weights = [1 << j for j in range(self.n)]
        return tuple(
            sum(w for w, b in zip(weights, row) if b) for row in self._bits.tolist()
        )

    def dump_rows(self) -> list[str]:
        return ["".join(str(int(b)) for b in row) for row in self._bits.tolist()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdjacencyMatrix):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash((self.dim, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"AdjacencyMatrix(n={self.n}, dim={self.dim}, valency={self.valency})"


@dataclass(frozen=True, slots=True)
class MdcGraph:
    """Gamma(N, S): x ~ y iff x - y (mod N) lies in S."""

    dim: DimVector
    conn: ConnectionSet
    adjacency: AdjacencyMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.conn.dim != self.dim:
            raise InvalidGraphError(
                f"connection set lives on {self.conn.dim}, graph on {self.dim}"
            )
        object.__setattr__(self, "adjacency", build_adjacency(self.dim, self.conn))

    @classmethod
    def from_compact(
        cls,
        dim: DimVector,
        compact: CompactConnectionSet | Iterable[Iterable[int]],
        *,
        close_negation: bool = True,
    ) -> "MdcGraph":
        if not isinstance(compact, CompactConnectionSet):
            compact = CompactConnectionSet.from_lists(compact)
        return cls(dim, expand_compact(dim, compact, close_negation=close_negation))

    @classmethod
    def from_elements(
        cls,
        dim: DimVector,
        elements: Iterable[Sequence[int]],
        *,
        close_negation: bool = True,
    ) -> "MdcGraph":
        return cls(dim, validate_connection_set(dim, elements, close_negation))

    @property
    def n(self) -> int:
        return self.dim.n

    @property
    def valency(self) -> int:
        return self.conn.valency

    def compact(self) -> CompactConnectionSet:
        return compact_of(self.conn)


def validate_connection_set(
    dim: DimVector,
    raw: Iterable[Sequence[int]],
    close_negation: bool = True,
) -> ConnectionSet:
    """Reduce ``raw`` modulo ``dim`` and enforce S = -S and 0 not in S.

    With ``close_negation`` the missing negatives are added (and a warning logged);
    otherwise a non-symmetric input is rejected.
    """

    reduced = {dim.reduce(x) for x in raw}
    if dim.zero in reduced:
        raise InvalidGraphError("connection set contains the zero element")
    missing = {dim.negate(x) for x in reduced} - reduced
    if missing:
        if not close_negation:
            raise InvalidGraphError(
                f"connection set is not closed under negation; missing {sorted(missing)}"
            )
        logger.warning(
            "closing connection set on {} under negation, adding {}", dim, sorted(missing)
        )
        reduced |= missing
    return ConnectionSet(dim, frozenset(reduced))


def expand_compact(
    dim: DimVector,
    compact: CompactConnectionSet,
    *,
    close_negation: bool = True,
) -> ConnectionSet:
    """Expand block-row supports into the full connection set.

    Column ``p`` of block ``b`` is the vertex ``(b, decode(p - 1))`` over the
    trailing moduli.
    """

    compact.check_against(dim)
    tail = DimVector(dim.moduli[1:]) if dim.k > 1 else None
    raw: list[GroupElement] = []
    for block, row in enumerate(compact.rows):
        for position in row:
            rest = tail.decode(position - 1) if tail is not None else ()
            raw.append((block, *rest))
    return validate_connection_set(dim, raw, close_negation)


def compact_of(conn: ConnectionSet) -> CompactConnectionSet:
    """Read the first row of the first n_1 blocks back into compact form."""

    dim = conn.dim
    tail = DimVector(dim.moduli[1:]) if dim.k > 1 else None
    rows: list[list[int]] = [[] for _ in range(dim.moduli[0])]
    for x in conn.elements:
        position = tail.index(x[1:]) if tail is not None else 0
        rows[x[0]].append(position + 1)
    return CompactConnectionSet.from_lists(rows)


def build_adjacency(dim: DimVector, conn: ConnectionSet) -> AdjacencyMatrix:
    """Bit (u, v) is set iff decode(u) - decode(v) (mod N) lies in S."""

    coords = dim.coordinates()
    moduli = np.asarray(dim.moduli, dtype=np.int64)
    strides = np.asarray(dim.strides, dtype=np.int64)
    diff = (coords[:, None, :] - coords[None, :, :]) % moduli
    diff_index = diff @ strides
    bits = conn.membership()[diff_index].astype(np.uint8)
    return AdjacencyMatrix(bits, dim)


def complement(graph: MdcGraph) -> MdcGraph:
    """Gamma(N, S') with S' = (V minus 0) minus S."""

    dim = graph.dim
    others = frozenset(x for x in dim.elements() if x != dim.zero) - graph.conn.elements
    return MdcGraph(dim, ConnectionSet(dim, others))


@dataclass(frozen=True, slots=True)
class PartitionInfo:
    """Lexicographic partition V_0..V_{n_1 - 1} by first coordinate."""

    classes: tuple[tuple[int, ...], ...]
    multipartite: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "parts": len(self.classes),
            "partSize": len(self.classes[0]) if self.classes else 0,
            "multipartite": self.multipartite,
        }


def partition_classes(graph: MdcGraph) -> PartitionInfo:
    dim = graph.dim
    width = dim.block_width
    classes = tuple(
        tuple(range(block * width, (block + 1) * width))
        for block in range(dim.moduli[0])
    )
    return PartitionInfo(classes, 0 not in graph.conn.first_coordinates())


def intra_class_edges(graph: MdcGraph, partition: PartitionInfo) -> int:
    bits = graph.adjacency.bits
    total = 0
    for part in partition.classes:
        block = bits[np.ix_(part, part)]
        total += int(block.sum()) // 2
    return total


def verify_nested_block_circulant(
    matrix: AdjacencyMatrix | np.ndarray, dim: DimVector
) -> bool:
    """Check block circulance at every nesting level of ``dim``.

    At level l each block of side prod(n_l..n_k) splits into n_l x n_l sub-blocks
    whose block rows are right cyclic shifts of the first.
    """

    bits = matrix.bits if isinstance(matrix, AdjacencyMatrix) else np.asarray(matrix)
    n = dim.n
    if bits.shape != (n, n):
        raise ShapeError(f"matrix shape {bits.shape} does not match n = {n}")
    for level, modulus in enumerate(dim.moduli):
        side = prod(dim.moduli[level:])
        sub = side // modulus
        outer = n // side
        blocks = bits.reshape(outer, modulus, sub, outer, modulus, sub)
        for i in range(1, modulus):
            for j in range(modulus):
                expected = blocks[:, 0, :, :, (j - i) % modulus, :]
                if not np.array_equal(blocks[:, i, :, :, j, :], expected):
                    return False
    return True
