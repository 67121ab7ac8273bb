"""Jitted enumeration kernels over packed (X | Z) accumulators.

All kernels release the GIL so blocks can run on a thread pool. Arithmetic on
words stays in uint64; mixing signed integers in would promote to float.
"""

from __future__ import annotations

import numpy as np
from numba import njit


_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_SIX = np.uint64(63)


@njit(cache=True, nogil=True)
def popcount64(v):
    v = v - ((v >> np.uint64(1)) & _M1)
    v = (v & _M2) + ((v >> np.uint64(2)) & _M2)
    v = (v + (v >> np.uint64(4))) & _M4
    return np.int64((v * _H01) >> np.uint64(56))


@njit(cache=True, nogil=True)
def _weight(xacc, zacc):
    total = np.int64(0)
    for w in range(xacc.shape[0]):
        total += popcount64(xacc[w] | zacc[w])
    return total


@njit(cache=True, nogil=True)
def _toggle(rows, i, xacc, zacc):
    xacc[i >> 6] ^= _ONE << (np.uint64(i) & _SIX)
    for w in range(zacc.shape[0]):
        zacc[w] ^= rows[i, w]


@njit(cache=True, nogil=True)
def _record(weight, best, threshold, hist, witness, c, r, top, aborted):
    # returns updated (best, aborted)
    if weight < hist.shape[0]:
        hist[weight] += 1
    if weight < best:
        best = weight
        for j in range(r):
            witness[j] = c[j + 1]
        witness[r] = top
    if weight < threshold:
        aborted = True
    return best, aborted


@njit(cache=True, nogil=True)
def scan_block(rows, top, r, threshold, hist, witness):
    """Visit every combination {top} + R with R an r-subset of {0..top-1}.

    R runs in revolving-door order, so each step swaps one row out and one in.
    ``hist[w]`` counts weights below ``hist.shape[0]``; ``witness`` receives the
    first combination reaching the block minimum (length r + 1). Stops early
    once a weight below ``threshold`` appears.

    Returns (best weight, combinations visited, aborted flag).
    """

    words = rows.shape[1]
    xacc = np.zeros(words, dtype=np.uint64)
    zacc = np.zeros(words, dtype=np.uint64)
    best = np.int64(1 << 30)
    aborted = False
    visited = np.int64(0)
    m = top

    # c[1..r] hold the lower indices; c[r+1] = m and c[r+2] is a sentinel
    c = np.zeros(r + 3, dtype=np.int64)
    for j in range(1, r + 1):
        c[j] = j - 1
    c[r + 1] = m
    c[r + 2] = m

    _toggle(rows, top, xacc, zacc)
    for j in range(1, r + 1):
        _toggle(rows, c[j], xacc, zacc)

    weight = _weight(xacc, zacc)
    visited += 1
    best, aborted = _record(weight, best, threshold, hist, witness, c, r, top, aborted)
    if aborted or r == 0 or r == m:
        return best, visited, aborted

    if r == 1:
        for value in range(1, m):
            _toggle(rows, c[1], xacc, zacc)
            c[1] = value
            _toggle(rows, value, xacc, zacc)
            weight = _weight(xacc, zacc)
            visited += 1
            best, aborted = _record(
                weight, best, threshold, hist, witness, c, r, top, aborted
            )
            if aborted:
                break
        return best, visited, aborted

    odd = (r & 1) == 1
    while True:
        out = np.int64(-1)
        inn = np.int64(-1)
        state = 0
        j = 2
        if odd:
            if c[1] + 1 < c[2]:
                out = c[1]
                c[1] += 1
                inn = c[1]
            else:
                state = 4
        else:
            if c[1] > 0:
                out = c[1]
                c[1] -= 1
                inn = c[1]
            else:
                state = 5
        done = False
        while state != 0:
            if state == 4:
                if c[j] >= j:
                    out = c[j]
                    inn = j - 2
                    c[j] = c[j - 1]
                    c[j - 1] = j - 2
                    state = 0
                else:
                    j += 1
                    state = 5
            else:
                if c[j] + 1 < c[j + 1]:
                    out = c[j - 1]
                    inn = c[j] + 1
                    c[j - 1] = c[j]
                    c[j] += 1
                    state = 0
                else:
                    j += 1
                    if j <= r:
                        state = 4
                    else:
                        done = True
                        state = 0
        if done:
            break
        _toggle(rows, out, xacc, zacc)
        _toggle(rows, inn, xacc, zacc)
        weight = _weight(xacc, zacc)
        visited += 1
        best, aborted = _record(
            weight, best, threshold, hist, witness, c, r, top, aborted
        )
        if aborted:
            break
    return best, visited, aborted


@njit(cache=True, nogil=True)
def gray_block(rows, prefix, low_bits, counts):
    """Reflected Gray walk over the low ``low_bits`` rows on top of ``prefix``.

    ``prefix`` lists the high rows already combined into the block base.
    ``counts[w]`` accumulates every visited weight. After the walk the cycle is
    closed by toggling row ``low_bits - 1`` again.

    Returns (visits, closed) where ``closed`` says the accumulator came back to
    the block base.
    """

    words = rows.shape[1]
    xacc = np.zeros(words, dtype=np.uint64)
    zacc = np.zeros(words, dtype=np.uint64)
    for t in range(prefix.shape[0]):
        _toggle(rows, prefix[t], xacc, zacc)
    xbase = xacc.copy()
    zbase = zacc.copy()

    counts[_weight(xacc, zacc)] += 1
    visits = np.int64(1)
    total = np.int64(1) << np.int64(low_bits)
    for i in range(1, total):
        j = np.int64(0)
        v = i
        while (v & 1) == 0:
            v >>= 1
            j += 1
        _toggle(rows, j, xacc, zacc)
        counts[_weight(xacc, zacc)] += 1
        visits += 1

    closed = True
    if low_bits > 0:
        _toggle(rows, low_bits - 1, xacc, zacc)
    for w in range(words):
        if xacc[w] != xbase[w] or zacc[w] != zbase[w]:
            closed = False
    return visits, closed
