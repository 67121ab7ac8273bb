"""Weight distributions, minimum distances and certified bounds for graph codes.

Every codeword is ``codeword(c)`` for a combination ``c`` of generators and, as the
X-block is the identity, its weight is at least popcount(c). Enumerating
combinations by ascending popcount therefore certifies every weight below the
next unfinished level.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Sequence

import numpy as np
from loguru import logger

from ..codes.graph_code import GraphCode, SymplecticVector, codeword
from ..diagnostics import BudgetExceeded, MdcqError
from . import kernels
from .combinations import block_size, level_blocks


DEFAULT_WD_CAP = 36
DEFAULT_WORK_BUDGET = 2**34
DEFAULT_SAMPLER_BUDGET = 256
GRAY_PREFIX_BITS = 6
_NO_THRESHOLD = 0


def symplectic_weight(v: SymplecticVector) -> int:
    """|supp(x) | supp(z)|."""

    return (v.x | v.z).bit_count()


@dataclass(frozen=True, slots=True)
class WeightDistribution:
    """W_0..W_upto; complete when upto == n."""

    n: int
    counts: tuple[int, ...]

    @property
    def upto(self) -> int:
        return len(self.counts) - 1

    @property
    def complete(self) -> bool:
        return self.upto == self.n

    def __getitem__(self, weight: int) -> int:
        return self.counts[weight]

    def prefix(self, upto: int) -> tuple[int, ...]:
        return self.counts[: upto + 1]

    def minimum_distance(self) -> int | None:
        for weight, count in enumerate(self.counts[1:], start=1):
            if count:
                return weight
        return None

    def check(self, *, type_ii: bool = False) -> None:
        if self.counts[0] != 1:
            raise MdcqError(f"W_0 = {self.counts[0]}, expected 1")
        if self.complete and sum(self.counts) != 2**self.n:
            raise MdcqError("weight distribution does not sum to 2^n")
        if type_ii and any(self.counts[1::2]):
            raise MdcqError("Type II code with a nonzero odd-weight count")

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "upto": self.upto,
            "complete": self.complete,
            "W": {str(w): c for w, c in enumerate(self.counts) if c},
        }

    def csv_rows(self) -> list[tuple[int, int]]:
        return [(w, c) for w, c in enumerate(self.counts)]


@dataclass(frozen=True, slots=True)
class DistanceReport:
    """Certified interval [lower, upper] for the minimum distance."""

    lower: int
    upper: int
    exact: bool
    radius: int
    budget_used: int
    witness: tuple[int, ...] | None = None
    method: str = "exact"
    samples: int = 0

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise MdcqError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.exact and self.lower != self.upper:
            raise MdcqError("exact report with lower != upper")

    @property
    def distance(self) -> int | None:
        return self.lower if self.exact else None

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "d": self.distance,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "radius": self.radius,
            "budgetUsed": self.budget_used,
            "method": self.method,
        }
        if self.samples:
            payload["samples"] = self.samples
        if self.witness is not None:
            payload["witness"] = list(self.witness)
        return payload


@dataclass(slots=True)
class _LevelResult:
    best: int
    visited: int
    aborted: bool
    witness: tuple[int, ...] | None
    hist: np.ndarray | None = field(default=None)


def _run(tasks: Sequence[Callable[[], Any]], threads: int) -> list[Any]:
    if threads <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(task) for task in tasks]
        return [f.result() for f in futures]


def _scan_level(
    rows: np.ndarray,
    n: int,
    w: int,
    *,
    threshold: int = _NO_THRESHOLD,
    hist_len: int = 0,
    threads: int = 1,
) -> _LevelResult:
    """Enumerate every popcount-w combination, block by block.

    Blocks are merged in ascending top-index order, which fixes the witness and
    makes the result independent of ``threads``.
    """

    tops = level_blocks(n, w)

    def make(top: int) -> Callable[[], tuple[int, int, bool, np.ndarray, np.ndarray]]:
        def task() -> tuple[int, int, bool, np.ndarray, np.ndarray]:
            hist = np.zeros(hist_len, dtype=np.int64)
            witness = np.zeros(w, dtype=np.int64)
            best, visited, aborted = kernels.scan_block(
                rows, np.int64(top), np.int64(w - 1), np.int64(threshold), hist, witness
            )
            return int(best), int(visited), bool(aborted), witness, hist

        return task

    # largest blocks first so the pool stays busy
    order = sorted(tops, key=lambda t: -block_size(t, w))
    outputs = dict(zip(order, _run([make(t) for t in order], threads)))

    best = 1 << 30
    visited = 0
    aborted = False
    witness: tuple[int, ...] | None = None
    hist = np.zeros(hist_len, dtype=np.int64)
    for top in tops:
        b, v, a, wit, h = outputs[top]
        visited += v
        aborted = aborted or a
        hist += h
        if b < best:
            best = b
            witness = tuple(int(i) for i in wit)
    return _LevelResult(best, visited, aborted, witness, hist)


def check_weight_bound(code: GraphCode, samples: int = 16, seed: int = 0) -> None:
    """Spot-check wt(codeword(c)) >= popcount(c) on random combinations."""

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        bits = rng.integers(0, 2, size=code.n)
        word = codeword(code, bits.tolist())
        if symplectic_weight(word) < int(bits.sum()):
            raise MdcqError("codeword weight fell below combination popcount")


def weight_distribution_full(
    code: GraphCode, cap: int = DEFAULT_WD_CAP, *, threads: int = 1
) -> WeightDistribution:
    """Exact W_0..W_n by Gray-code iteration over all 2^n combinations."""

    if code.n > cap:
        raise BudgetExceeded(
            f"full weight distribution needs 2^{code.n} steps; cap is n <= {cap}"
        )
    counts, visits, _ = _gray_walk(code, threads=threads)
    if visits != 1 << code.n:
        raise MdcqError(f"Gray walk visited {visits} of {1 << code.n} combinations")
    return WeightDistribution(code.n, tuple(int(c) for c in counts))


def _gray_walk(
    code: GraphCode, *, prefix_bits: int | None = None, threads: int = 1
) -> tuple[np.ndarray, int, bool]:
    n = code.n
    rows = code.packed_rows()
    p = min(n, GRAY_PREFIX_BITS) if prefix_bits is None else min(n, prefix_bits)
    low = n - p

    def make(block: int) -> Callable[[], tuple[np.ndarray, int, bool]]:
        def task() -> tuple[np.ndarray, int, bool]:
            prefix = np.array(
                [low + b for b in range(p) if (block >> b) & 1], dtype=np.int64
            )
            counts = np.zeros(n + 1, dtype=np.int64)
            visits, closed = kernels.gray_block(rows, prefix, np.int64(low), counts)
            return counts, int(visits), bool(closed)

        return task

    results = _run([make(b) for b in range(1 << p)], threads)
    counts = np.zeros(n + 1, dtype=np.int64)
    visits = 0
    closed = True
    for block_counts, block_visits, block_closed in results:
        counts += block_counts
        visits += block_visits
        closed = closed and block_closed
    return counts, visits, closed


def gray_walk_closes(code: GraphCode) -> tuple[int, bool]:
    """Single-block Gray walk: (visits, accumulator returned to zero)."""

    _, visits, closed = _gray_walk(code, prefix_bits=0)
    return visits, closed


def _level_cost(n: int, w: int) -> int:
    return comb(n, w)


def min_distance_exact(
    code: GraphCode,
    effort_cap: int = DEFAULT_WORK_BUDGET,
    *,
    threads: int = 1,
    witness: bool = False,
) -> DistanceReport:
    """Exact minimum distance by ascending-popcount enumeration.

    Stops before level w once the best weight found is at most w.
    """

    check_weight_bound(code)
    rows = code.packed_rows()
    best = code.n + 1
    best_witness: tuple[int, ...] | None = None
    used = 0
    radius = 0
    for w in range(1, code.n + 1):
        if best <= w:
            break
        cost = _level_cost(code.n, w)
        if used + cost > effort_cap:
            partial = DistanceReport(
                lower=min(best, radius + 1),
                upper=best,
                exact=False,
                radius=radius,
                budget_used=used,
                method="exact",
            )
            logger.warning(
                "exact distance stopped at radius {} ({} units used, cap {})",
                radius,
                used,
                effort_cap,
            )
            raise BudgetExceeded(
                f"level {w} needs {cost} more units; cap {effort_cap} reached", partial
            )
        level = _scan_level(rows, code.n, w, threads=threads)
        used += level.visited
        radius = w
        logger.debug("level {} done: best {} after {} units", w, level.best, used)
        if level.best < best:
            best = level.best
            best_witness = level.witness
    return DistanceReport(
        lower=best,
        upper=best,
        exact=True,
        radius=radius,
        budget_used=used,
        witness=best_witness if witness else None,
        method="exact",
    )


def min_distance_at_least(
    code: GraphCode, target: int, *, threads: int = 1
) -> bool:
    """True iff no combination with popcount < target has weight < target."""

    if target <= 1:
        return True
    rows = code.packed_rows()
    for w in range(1, min(target - 1, code.n) + 1):
        level = _scan_level(rows, code.n, w, threshold=target, threads=threads)
        if level.aborted:
            return False
    return True


def _sample_upper(
    code: GraphCode, radius: int, samples: int, seed: int
) -> tuple[int, tuple[int, ...] | None]:
    """Randomized descent over combinations with popcount above ``radius``."""

    n = code.n
    if samples <= 0 or radius >= n:
        return n + 1, None
    rng = np.random.default_rng(seed)
    best = n + 1
    best_mask: int | None = None
    low = min(radius + 1, n)
    high = max(low, n // 2)
    for _ in range(samples):
        size = int(rng.integers(low, high + 1))
        chosen = rng.choice(n, size=size, replace=False)
        x = 0
        z = 0
        for i in chosen.tolist():
            x ^= 1 << i
            z ^= code.zrows[i]
        current = (x | z).bit_count()
        improved = True
        while improved:
            improved = False
            for i in rng.permutation(n).tolist():
                nx = x ^ (1 << i)
                if not nx:
                    continue
                nz = z ^ code.zrows[i]
                weight = (nx | nz).bit_count()
                if weight < current:
                    x, z, current = nx, nz, weight
                    improved = True
        if current < best:
            best, best_mask = current, x
    if best_mask is None:
        return best, None
    return best, tuple(i for i in range(n) if (best_mask >> i) & 1)


def distance_bounds(
    code: GraphCode,
    radius: int,
    sampler_budget: int = DEFAULT_SAMPLER_BUDGET,
    *,
    work_budget: int = DEFAULT_WORK_BUDGET,
    seed: int = 0,
    threads: int = 1,
    witness: bool = False,
) -> DistanceReport:
    """Certified lower bound from levels 1..radius plus a sampled upper bound.

    If the work budget runs out, the report covers the last completed level.
    """

    check_weight_bound(code, seed=seed)
    rows = code.packed_rows()
    best = code.n + 1
    best_witness: tuple[int, ...] | None = None
    used = 0
    completed = 0
    for w in range(1, min(radius, code.n) + 1):
        if best <= w:
            break
        cost = _level_cost(code.n, w)
        if used + cost > work_budget:
            logger.warning(
                "bounded enumeration stopped after radius {} ({} units)", completed, used
            )
            break
        level = _scan_level(rows, code.n, w, threads=threads)
        used += level.visited
        completed = w
        if level.best < best:
            best = level.best
            best_witness = level.witness

    lower = min(best, completed + 1)
    sampled, sampled_witness = _sample_upper(code, completed, sampler_budget, seed)
    upper = min(best, sampled)
    if upper == best and best <= code.n:
        chosen = best_witness
    else:
        chosen = sampled_witness
    # every generator is a codeword of weight 1 + deg(i)
    lightest = min(range(code.n), key=lambda i: code.zrows[i].bit_count())
    generator_weight = 1 + code.zrows[lightest].bit_count()
    if generator_weight < upper:
        upper = generator_weight
        chosen = (lightest,)
    return DistanceReport(
        lower=lower,
        upper=upper,
        exact=lower == upper,
        radius=completed,
        budget_used=used,
        witness=chosen if witness else None,
        method="bounds",
        samples=sampler_budget,
    )


def low_weight_census(
    code: GraphCode,
    wmax: int,
    budget: int = DEFAULT_WORK_BUDGET,
    *,
    threads: int = 1,
) -> WeightDistribution:
    """Exact W_0..W_wmax from combinations of popcount <= wmax."""

    wmax = min(wmax, code.n)
    rows = code.packed_rows()
    counts = np.zeros(wmax + 1, dtype=np.int64)
    counts[0] = 1
    used = 0
    for w in range(1, wmax + 1):
        cost = _level_cost(code.n, w)
        if used + cost > budget:
            partial = WeightDistribution(code.n, tuple(int(c) for c in counts[:w]))
            logger.warning("census stopped after radius {} ({} units)", w - 1, used)
            raise BudgetExceeded(
                f"census level {w} needs {cost} more units; budget {budget} reached",
                partial,
            )
        level = _scan_level(rows, code.n, w, hist_len=wmax + 1, threads=threads)
        used += level.visited
        assert level.hist is not None
        counts += level.hist
    return WeightDistribution(code.n, tuple(int(c) for c in counts))
