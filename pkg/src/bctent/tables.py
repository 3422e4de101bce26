"""Meet-in-the-middle digit-sum tables.

A table holds the 2^(L/2) sorted values sum_{i=1..L/2} a_i lam^i over all
binary digit prefixes a.  A full length-L sum is recombined as
s1 + lam^(L/2) * s2, so a single sorted table answers "how many of the 2^L
digit sequences have normalized sum <= x" in one linear sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ParameterError, ResourceError

MAX_DEPTH = 60
DEFAULT_MEMORY_CAP = 4 << 30  # bytes
BRUTE_FORCE_MAX_DEPTH = 24


def cumulative_power(lam: float, k: int) -> float:
    """lam^k by repeated multiplication, matching the table build exactly."""
    power = 1.0
    for _ in range(k):
        power *= lam
    return power


def default_eta(depth: int) -> float:
    """Floating-point slack for a depth-L table.

    Each stored half-sum accrues at most L/2 + 2 roundings of relative size
    2^-52 on magnitudes below 3; L * 2^-46 overshoots that by more than 10x.
    """
    return depth * 2.0 ** -46


@dataclass(frozen=True)
class HalfSumTable:
    """Sorted multiset of half digit-sums at a fixed contraction ratio.

    halves[k] = sum_{i=1..L/2} a_i lam^i for the k-th prefix, sorted
    nondecreasing.  norm = 1/lam - 1 rescales full sums onto [0, 1);
    combine_scale = lam^(L/2) lifts a half-sum into the high digit block.
    """

    lam: float
    depth: int
    halves: np.ndarray
    combine_scale: float
    norm: float
    eta: float

    @property
    def size(self) -> int:
        return self.halves.shape[0]

    def max_normalized_sum(self) -> float:
        """Largest attainable normalized sum, 1 - lam^L up to rounding."""
        top = self.halves[-1]
        return self.norm * (top + self.combine_scale * top)


def _check_lambda(lam: float) -> None:
    if not (0.0 < lam < 1.0) or math.isnan(lam):
        raise ParameterError(f"lambda must lie in (0, 1), got {lam!r}")


def build_half_sum_table(
    lam: float,
    depth: int,
    eta: float | None = None,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> HalfSumTable:
    """Enumerate, sort and freeze the 2^(L/2) half-sums at lam.

    Deterministic for fixed (lam, depth, eta): the enumeration order and
    the sort are both fixed, so two builds are bit-identical.
    """
    _check_lambda(lam)
    if depth % 2 != 0:
        raise ParameterError(f"depth L must be even, got {depth}")
    if not (2 <= depth <= MAX_DEPTH):
        raise ParameterError(f"depth L must be in [2, {MAX_DEPTH}], got {depth}")
    if eta is None:
        eta = default_eta(depth)
    if eta < 0.0:
        raise ParameterError(f"eta must be >= 0, got {eta}")

    half = depth // 2
    need = 8 << half
    if need > memory_cap:
        raise ResourceError(
            f"half-sum table at L={depth} needs {need} bytes "
            f"(cap {memory_cap}); lower L or raise the memory cap"
        )

    # Doubling construction in a preallocated buffer (peak memory is the
    # final array): after step i the prefix holds the sums over digits
    # 1..i, each accumulated left to right.
    halves = np.empty(1 << half, dtype=np.float64)
    halves[0] = 0.0
    size = 1
    power = 1.0
    for _ in range(half):
        power *= lam
        np.add(halves[:size], power, out=halves[size : 2 * size])
        size *= 2
    # Default introsort: in-place (stable sort would allocate a second
    # full-size buffer) and deterministic for a fixed input array.
    halves.sort()
    halves.setflags(write=False)

    return HalfSumTable(
        lam=lam,
        depth=depth,
        halves=halves,
        combine_scale=power,
        norm=1.0 / lam - 1.0,
        eta=eta,
    )


@njit(cache=True, nogil=True)
def _count_pairs_le(halves, combine_scale, norm, x):  # pragma: no cover
    n = halves.shape[0]
    total = 0
    p = 0
    # Descending sweep over the high half; the admissible low-half prefix
    # only grows, so the pointer p never moves backwards.
    for j in range(n - 1, -1, -1):
        s2 = combine_scale * halves[j]
        while p < n and norm * (halves[p] + s2) <= x:
            p += 1
        total += p
    return total


def count_le(table: HalfSumTable, x: float) -> int:
    """Number of length-L digit sequences with normalized sum <= x.

    Exact with respect to the stored half-sum values: the predicate is
    norm * (s1 + combine_scale * s2) <= x evaluated in binary64.  Cost is
    one O(2^(L/2)) sweep; no slack is applied here (callers own eta).
    """
    if x < 0.0:
        return 0
    if x >= 1.0:
        return 1 << table.depth
    return int(_count_pairs_le(table.halves, table.combine_scale, table.norm, x))


@njit(cache=True, nogil=True)
def _brute_count(powers, norm, x, depth):  # pragma: no cover
    total = 0
    for code in range(1 << depth):
        s = 0.0
        for i in range(depth):
            if (code >> i) & 1:
                s += powers[i]
        if norm * s <= x:
            total += 1
    return total


def brute_force_count(lam: float, depth: int, x: float) -> int:
    """Independent oracle for count_le by direct 2^L enumeration.

    Sums run left to right over digits i = 1..L with powers lam^i computed
    independently of the table build.  Refused above L = 24.
    """
    _check_lambda(lam)
    if not (1 <= depth <= BRUTE_FORCE_MAX_DEPTH):
        raise ParameterError(
            f"brute force enumeration limited to 1 <= L <= "
            f"{BRUTE_FORCE_MAX_DEPTH}, got {depth}"
        )
    powers = lam ** np.arange(1, depth + 1, dtype=np.float64)
    return int(_brute_count(powers, 1.0 / lam - 1.0, x, depth))


def validate_table(table: HalfSumTable) -> None:
    """Re-check the structural invariants; raises IntegrityError on failure."""
    from .errors import IntegrityError

    h = table.halves
    half = table.depth // 2
    if h.shape[0] != 1 << half:
        raise IntegrityError(
            f"table has {h.shape[0]} entries, expected {1 << half}"
        )
    if np.any(np.diff(h) < 0.0):
        raise IntegrityError("half-sum table is not sorted")
    geo = table.lam * (1.0 - table.lam ** half) / (1.0 - table.lam)
    if abs(h[0]) > table.eta or abs(h[-1] - geo) > table.eta:
        raise IntegrityError("table endpoints disagree with the geometric sum")
    full_max = table.norm * (h[-1] + table.combine_scale * h[-1])
    if abs(full_max - (1.0 - table.lam ** table.depth)) > table.eta:
        raise IntegrityError("full-sum maximum disagrees with 1 - lam^L")
