"""Combination orders shared by the kernels and the reference implementations."""

from __future__ import annotations

from math import comb
from typing import Iterator


def revolving_door(m: int, r: int) -> Iterator[tuple[int, ...]]:
    """All r-subsets of {0..m-1}; consecutive subsets differ by one swap."""

    if r < 0 or r > m:
        return
    if r == 0:
        yield ()
        return
    if r == m:
        yield tuple(range(m))
        return
    if r == 1:
        for value in range(m):
            yield (value,)
        return

    c = [0] + list(range(r)) + [m, m]
    yield tuple(c[1 : r + 1])
    while True:
        j = 2
        if r % 2 == 1:
            if c[1] + 1 < c[2]:
                c[1] += 1
                yield tuple(c[1 : r + 1])
                continue
            state = 4
        else:
            if c[1] > 0:
                c[1] -= 1
                yield tuple(c[1 : r + 1])
                continue
            state = 5
        while True:
            if state == 4:
                if c[j] >= j:
                    c[j], c[j - 1] = c[j - 1], j - 2
                    break
                j += 1
                state = 5
            else:
                if c[j] + 1 < c[j + 1]:
                    c[j - 1], c[j] = c[j], c[j] + 1
                    break
                j += 1
                if j > r:
                    return
                state = 4
        yield tuple(c[1 : r + 1])


def level_blocks(n: int, w: int) -> list[int]:
    """Highest indices partitioning the popcount-w level into contiguous blocks."""

    if w <= 0 or w > n:
        return []
    return list(range(w - 1, n))


def block_size(top: int, w: int) -> int:
    return comb(top, w - 1)


def level_order(n: int, w: int) -> Iterator[tuple[int, ...]]:
    """Enumeration order of level w: blocks by ascending top, revolving door inside."""

    for top in level_blocks(n, w):
        for rest in revolving_door(top, w - 1):
            yield (*rest, top)


def work_up_to(n: int, radius: int) -> int:
    """Combinations with popcount 1..radius."""

    return sum(comb(n, w) for w in range(1, min(radius, n) + 1))
