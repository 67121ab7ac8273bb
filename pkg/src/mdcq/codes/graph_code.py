"""Additive codes over GF(4) spanned by the rows of A + wI, kept in (X | Z) form."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from ..diagnostics import InvalidGraphError, MdcqError, ShapeError
from ..graph.core import AdjacencyMatrix, MdcGraph
from .gf4 import F4Element, render_vector, symplectic_form


WORD_BITS = 64


@dataclass(frozen=True, slots=True)
class SymplecticVector:
    """A length-n vector over GF(4) as a pair of bitmasks (bit i = coordinate i)."""

    n: int
    x: int
    z: int

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def __xor__(self, other: "SymplecticVector") -> "SymplecticVector":
        if self.n != other.n:
            raise ShapeError(f"vectors have lengths {self.n} and {other.n}")
        return SymplecticVector(self.n, self.x ^ other.x, self.z ^ other.z)

    def to_f4(self) -> list[F4Element]:
        return [F4Element((self.x >> i) & 1, (self.z >> i) & 1) for i in range(self.n)]

    @classmethod
    def from_f4(cls, vector: Sequence[F4Element]) -> "SymplecticVector":
        x = sum(e.x << i for i, e in enumerate(vector))
        z = sum(e.z << i for i, e in enumerate(vector))
        return cls(len(vector), x, z)

    def render(self) -> str:
        return render_vector(self.to_f4())


class CodeType(str, Enum):
    TYPE_I = "I"
    TYPE_II = "II"


@dataclass(frozen=True, slots=True)
class GraphCode:
    """Generators (e_i | row i of A); the code is their GF(2) span, size 2^n."""

    n: int
    zrows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.zrows) != self.n:
            raise ShapeError(f"{len(self.zrows)} generator rows for length {self.n}")

    def generator(self, i: int) -> SymplecticVector:
        return SymplecticVector(self.n, 1 << i, self.zrows[i])

    def generators(self) -> Iterator[SymplecticVector]:
        for i in range(self.n):
            yield self.generator(i)

    def packed_rows(self) -> np.ndarray:
        """Z-block rows packed little-endian into ``(n, words)`` uint64 words."""

        words = max(1, (self.n + WORD_BITS - 1) // WORD_BITS)
        mask = (1 << WORD_BITS) - 1
        packed = np.zeros((self.n, words), dtype=np.uint64)
        for i, row in enumerate(self.zrows):
            for w in range(words):
                packed[i, w] = (row >> (WORD_BITS * w)) & mask
        return packed

    def render_generators(self) -> list[str]:
        """Rows of A + wI over the alphabet {0, 1, w, W}."""

        return [g.render() for g in self.generators()]

    def xz_matrix(self) -> np.ndarray:
        """Binary ``(n, 2n)`` matrix (X | Z)."""

        out = np.zeros((self.n, 2 * self.n), dtype=np.uint8)
        for i, row in enumerate(self.zrows):
            out[i, i] = 1
            for j in range(self.n):
                out[i, self.n + j] = (row >> j) & 1
        return out

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(self.n.to_bytes(4, "little"))
        for row in self.zrows:
            h.update(row.to_bytes((self.n + 7) // 8 or 1, "little"))
        return h.hexdigest()


def code_from_graph(adjacency: AdjacencyMatrix | MdcGraph) -> GraphCode:
    """Code generated by the rows of A + wI."""

    matrix = adjacency.adjacency if isinstance(adjacency, MdcGraph) else adjacency
    bits = matrix.bits
    if not np.array_equal(bits, bits.T):
        raise InvalidGraphError("adjacency matrix is not symmetric")
    if bits.diagonal().any():
        raise InvalidGraphError("adjacency matrix has a nonzero diagonal")
    return GraphCode(matrix.n, matrix.row_ints())


def _combination_mask(code: GraphCode, combination: int | Sequence[int]) -> int:
    if isinstance(combination, (int, np.integer)):
        mask = int(combination)
        if mask < 0 or mask >> code.n:
            raise ShapeError(f"combination does not fit in {code.n} bits")
        return mask
    if len(combination) != code.n:
        raise ShapeError(f"combination has length {len(combination)}, expected {code.n}")
    return sum(1 << i for i, bit in enumerate(combination) if bit)


def codeword(code: GraphCode, combination: int | Sequence[int]) -> SymplecticVector:
    """x = c, z = c A over GF(2)."""

    mask = _combination_mask(code, combination)
    z = 0
    rest = mask
    while rest:
        low = rest & -rest
        z ^= code.zrows[low.bit_length() - 1]
        rest ^= low
    return SymplecticVector(code.n, mask, z)


def _gf2_rank(rows: list[int]) -> int:
    rank = 0
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                rank += 1
                break
            row ^= pivots[top]
    return rank


def is_self_dual(code: GraphCode) -> bool:
    """Pairwise trace-orthogonal generators spanning 2^n codewords."""

    gens = list(code.generators())
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if symplectic_form(a.x, a.z, b.x, b.z):
                return False
    combined = [(g.x << code.n) | g.z for g in gens]
    return _gf2_rank(combined) == code.n


def iter_codewords(code: GraphCode) -> Iterator[SymplecticVector]:
    """Every codeword in Gray order; 2^n items, for small n only."""

    x = z = 0
    yield SymplecticVector(code.n, 0, 0)
    for i in range(1, 1 << code.n):
        j = (i & -i).bit_length() - 1
        x ^= 1 << j
        z ^= code.zrows[j]
        yield SymplecticVector(code.n, x, z)


def all_weights_even(code: GraphCode) -> bool:
    return all(v.weight % 2 == 0 for v in iter_codewords(code))


TYPE_CROSS_CHECK_MAX_N = 16


def code_type(graph: MdcGraph, *, cross_check: bool = False) -> CodeType:
    """Type II iff |S| is odd; optionally confirmed by enumerating every codeword."""

    lemma = CodeType.TYPE_II if graph.valency % 2 == 1 else CodeType.TYPE_I
    if cross_check and graph.n <= TYPE_CROSS_CHECK_MAX_N:
        even = all_weights_even(code_from_graph(graph.adjacency))
        if even != (lemma is CodeType.TYPE_II):
            raise MdcqError(
                f"type cross-check failed for {graph.dim}: |S| = {graph.valency}, "
                f"all weights even = {even}"
            )
    return lemma
