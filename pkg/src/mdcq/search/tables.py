"""Reference classification data: maximum distances of MDC graph codes, 4 <= n <= 40."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class TableEntry:
    n: int
    dims: tuple[tuple[int, ...], ...]
    d_max: int
    circulant_d_max: int | None
    best_known: str
    note: str | None = None


def _row(
    n: int,
    dims: list[tuple[int, ...]],
    d_max: int,
    circulant: int | None,
    best: str,
    note: str | None = None,
) -> TableEntry:
    return TableEntry(n, tuple(dims), d_max, circulant, best, note)


# two-value rows: the first value is the circulant length, the second the listed N
REFERENCE_ROWS: tuple[TableEntry, ...] = (
    _row(4, [(2, 2)], 2, 2, "2"),
    _row(6, [(2, 3)], 4, 4, "4"),
    _row(8, [(2, 4), (2, 2, 2)], 4, 4, "4"),
    _row(9, [(3, 3)], 3, 4, "4", note="4, 3"),
    _row(10, [(2, 5)], 4, 4, "4"),
    _row(12, [(3, 4)], 6, 6, "6", note="6,4"),
    _row(12, [(2, 6)], 4, 6, "6", note="6,4"),
    _row(14, [(2, 7)], 6, 6, "6"),
    _row(15, [(3, 5)], 6, 6, "6"),
    _row(16, [(2, 8)], 6, 6, "6"),
    _row(16, [(4, 4), (2, 2, 4)], 4, None, "6"),
    _row(16, [(2, 2, 2, 2)], 4, None, "6"),
    _row(18, [(2, 9), (3, 6)], 6, 6, "8"),
    _row(20, [(4, 5), (2, 10)], 8, 8, "8"),
    _row(21, [(3, 7)], 7, 7, "8"),
    _row(22, [(2, 11)], 8, 8, "8"),
    _row(24, [(3, 8), (2, 12), (2, 2, 6)], 8, 8, "8-10"),
    _row(26, [(2, 13)], 8, 8, "8-10"),
    _row(27, [(3, 9)], 8, 8, "9-10"),
    _row(27, [(3, 3, 3)], 6, None, "9-10"),
    _row(28, [(4, 7)], 10, 10, "10", note="10, 8"),
    _row(28, [(2, 14)], 8, 10, "10", note="10, 8"),
    _row(30, [(3, 10)], 12, 12, "12"),
    _row(32, [(2, 16)], 10, 10, "10-12"),
    _row(32, [(4, 8), (2, 2, 8), (2, 2, 2, 4)], 8, None, "10-12"),
    _row(32, [(2, 4, 4)], 6, None, "10-12"),
    _row(32, [(2, 2, 2, 2, 2)], 8, None, "10-12"),
    _row(33, [(3, 11)], 10, 10, "10-12"),
    _row(34, [(2, 17)], 10, 10, "10-12"),
    _row(35, [(5, 7)], 10, 10, "11-13"),
    _row(36, [(2, 18)], 12, 11, "12-14"),
    _row(36, [(4, 9)], 11, None, "12-14"),
    _row(36, [(3, 12), (6, 6)], 10, None, "12-14"),
    _row(38, [(2, 19)], 12, 12, "12-14"),
    _row(39, [(3, 13)], 11, 11, "11-14"),
    _row(40, [(5, 8), (2, 20), (2, 2, 10)], 12, 12, "12-14"),
)


def reference_entry(moduli: tuple[int, ...]) -> TableEntry | None:
    """Table row listing exactly this dimension vector (order-insensitive)."""

    key = tuple(sorted(moduli))
    for entry in REFERENCE_ROWS:
        if any(tuple(sorted(d)) == key for d in entry.dims):
            return entry
    return None


def table_dims(max_n: int | None = None) -> list[tuple[int, ...]]:
    return [
        d
        for entry in REFERENCE_ROWS
        if max_n is None or entry.n <= max_n
        for d in entry.dims
    ]
