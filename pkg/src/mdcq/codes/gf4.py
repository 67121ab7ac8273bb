"""GF(4) arithmetic in the (x, z) bit encoding: element = x*w + z."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..diagnostics import ShapeError


_SYMBOLS = {(0, 0): "0", (0, 1): "1", (1, 0): "w", (1, 1): "W"}
_FROM_SYMBOL = {s: bits for bits, s in _SYMBOLS.items()}


@dataclass(frozen=True, slots=True)
class F4Element:
    """``x*w + z`` with w^2 = w + 1, so (0,1) = 1, (1,0) = w, (1,1) = w^2."""

    x: int
    z: int

    def __post_init__(self) -> None:
        if self.x not in (0, 1) or self.z not in (0, 1):
            raise ValueError(f"F4 coordinates must be bits, got ({self.x}, {self.z})")

    @classmethod
    def from_symbol(cls, symbol: str) -> "F4Element":
        try:
            return cls(*_FROM_SYMBOL[symbol])
        except KeyError as exc:
            raise ValueError(f"unknown GF(4) symbol {symbol!r}") from exc

    @property
    def symbol(self) -> str:
        return _SYMBOLS[(self.x, self.z)]

    def __add__(self, other: "F4Element") -> "F4Element":
        return F4Element(self.x ^ other.x, self.z ^ other.z)

    def __mul__(self, other: "F4Element") -> "F4Element":
        # (z + x w)(z' + x' w) = (zz' + xx') + (zx' + xz' + xx') w
        constant = (self.z & other.z) ^ (self.x & other.x)
        linear = (self.z & other.x) ^ (self.x & other.z) ^ (self.x & other.x)
        return F4Element(linear, constant)

    def square(self) -> "F4Element":
        return self * self

    def __bool__(self) -> bool:
        return bool(self.x or self.z)

    def __repr__(self) -> str:
        return f"F4({self.symbol})"


ZERO = F4Element(0, 0)
ONE = F4Element(0, 1)
OMEGA = F4Element(1, 0)
OMEGA2 = F4Element(1, 1)
ELEMENTS = (ZERO, ONE, OMEGA, OMEGA2)


def parse_vector(text: str) -> list[F4Element]:
    return [F4Element.from_symbol(ch) for ch in text.strip()]


def render_vector(vector: Sequence[F4Element]) -> str:
    return "".join(e.symbol for e in vector)


def trace_inner_product(u: Sequence[F4Element], v: Sequence[F4Element]) -> int:
    """sum u_i v_i^2 + u_i^2 v_i, evaluated in GF(4); the result is 0 or 1."""

    if len(u) != len(v):
        raise ShapeError(f"vectors have lengths {len(u)} and {len(v)}")
    total = ZERO
    for a, b in zip(u, v):
        total = total + a * b.square() + a.square() * b
    if total.x:
        raise ArithmeticError("trace inner product left the prime field")
    return total.z


def symplectic_form(x: int, z: int, x2: int, z2: int) -> int:
    """x.z' + x'.z over GF(2) for bitmask vectors."""

    return ((x & z2).bit_count() + (x2 & z).bit_count()) & 1
