"""Certified envelopes for the generalized tent map phi_lam.

phi_lam = F^-1(2 F(x)) is only implicitly defined, but the dyadic bounds
F- <= F <= F+ turn it into a pair of computable brackets:

    phi_lower(x) = largest y with F+(y) <= 2 F-(x)   (a lower bound)
    phi_upper(x) = smallest y with F-(y) >= 2 F+(x)  (an upper bound)

Both sides reduce to integer comparisons of pair counts, inverted by
monotone bisection that always returns the verified endpoint.  In interval
mode the same inequalities hold simultaneously for every lambda in
[lam0 - eps, lam0 + eps].
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cdf import (
    DyadicProb,
    LambdaInterval,
    f_lower,
    f_lower_interval,
    f_upper,
    f_upper_interval,
)
from .errors import InternalConsistencyError, ParameterError
from .tables import HalfSumTable, build_half_sum_table

DEFAULT_RHO = 2.0 ** -20


@dataclass(frozen=True)
class BoundsContext:
    """A half-sum table plus the (possibly degenerate) lambda interval it
    certifies."""

    table: HalfSumTable
    interval: LambdaInterval | None = None  # None => point mode

    @classmethod
    def point(cls, table: HalfSumTable) -> "BoundsContext":
        return cls(table=table, interval=None)

    @classmethod
    def around(cls, table: HalfSumTable, eps: float) -> "BoundsContext":
        if eps == 0.0:
            return cls.point(table)
        return cls(table=table, interval=LambdaInterval.around(table.lam, eps))

    @property
    def eps(self) -> float:
        return 0.0 if self.interval is None else self.interval.radius

    @property
    def lam_lo(self) -> float:
        return self.table.lam - self.eps

    @property
    def lam_hi(self) -> float:
        return self.table.lam + self.eps

    def f_lower(self, x: float) -> DyadicProb:
        if self.interval is None:
            return f_lower(self.table, x)
        return f_lower_interval(self.table, self.interval, x)

    def f_upper(self, x: float) -> DyadicProb:
        if self.interval is None:
            return f_upper(self.table, x)
        return f_upper_interval(self.table, self.interval, x)


def _largest_where(pred, rho: float) -> float:
    """Largest y in [0, 1] with pred(y), for pred true on a prefix.

    Returns the verified lower endpoint of the final bisection bracket,
    within rho of the true supremum; 0.0 if pred fails everywhere.
    """
    if not pred(0.0):
        return 0.0
    if pred(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > rho:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _smallest_where(pred, rho: float) -> float:
    """Smallest y in [0, 1] with pred(y), for pred true on a suffix.

    Returns the verified upper endpoint; 1.0 if pred fails everywhere.
    """
    if not pred(1.0):
        return 1.0
    if pred(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > rho:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def phi_lower(ctx: BoundsContext, x: float, rho: float = DEFAULT_RHO) -> float:
    """Certified lower bound on phi_lam(x) for every lambda the context
    covers, 0 <= x <= 1/2."""
    if not (0.0 <= x <= 0.5):
        raise ParameterError(f"x must lie in [0, 1/2], got {x}")
    if rho <= 0.0:
        raise ParameterError(f"rho must be > 0, got {rho}")
    target = 2 * ctx.f_lower(x).count
    full = 1 << ctx.table.depth
    if target > full:
        raise InternalConsistencyError(
            f"2 F-(x) = {target}/2^{ctx.table.depth} exceeds 1 at x={x}"
        )
    return _largest_where(lambda y: ctx.f_upper(y).count <= target, rho)


def phi_upper(ctx: BoundsContext, x: float, rho: float = DEFAULT_RHO) -> float:
    """Certified upper bound on phi_lam(x), 0 <= x <= 1/2."""
    if not (0.0 <= x <= 0.5):
        raise ParameterError(f"x must lie in [0, 1/2], got {x}")
    if rho <= 0.0:
        raise ParameterError(f"rho must be > 0, got {rho}")
    target = 2 * ctx.f_upper(x).count
    if target > 1 << ctx.table.depth:
        # No y can reach F- >= target; phi <= 1 holds unconditionally.
        return 1.0
    return _smallest_where(lambda y: ctx.f_lower(y).count >= target, rho)


def phi_bounds(
    ctx: BoundsContext, x: float, rho: float = DEFAULT_RHO
) -> tuple[float, float]:
    """Certified [lower, upper] bracket for phi at a single x in [0, 1/2].

    Uses the exact linear values x / lam where the map is known in closed
    form and bisection elsewhere, matching the per-point rule of
    build_envelope.
    """
    if x <= 1.0 - ctx.lam_hi:
        if ctx.eps == 0.0:
            v = x / ctx.table.lam
            return v, v
        return x / ctx.lam_hi, x / ctx.lam_lo
    return phi_lower(ctx, x, rho), phi_upper(ctx, x, rho)


@dataclass(frozen=True)
class TentEnvelope:
    """Per-grid-point brackets [lo[i], hi[i]] for phi at x_i = i/M,
    i = 0..floor(M/2), with symmetric extension beyond."""

    grid: int
    lo: np.ndarray
    hi: np.ndarray
    lam0: float
    eps: float
    depth: int
    eta: float
    rho: float

    def x(self, i: int) -> float:
        return i / self.grid

    def _mirror(self, i: int) -> int:
        if not 0 <= i <= self.grid:
            raise ParameterError(f"grid index {i} outside [0, {self.grid}]")
        return min(i, self.grid - i)

    def lo_at(self, i: int) -> float:
        return float(self.lo[self._mirror(i)])

    def hi_at(self, i: int) -> float:
        return float(self.hi[self._mirror(i)])

    def max_width(self, x_max: float = 0.5) -> float:
        n = len(self.lo)
        keep = [i for i in range(n) if self.x(i) <= x_max]
        return float(max(self.hi[i] - self.lo[i] for i in keep))

    def full_grid(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(x, lo, hi) over the whole unit interval via the mirror
        phi(x) = phi(1 - x)."""
        xs = np.arange(self.grid + 1) / self.grid
        idx = np.minimum(np.arange(self.grid + 1), self.grid - np.arange(self.grid + 1))
        return xs, self.lo[idx], self.hi[idx]

    def midpoint(self, x) -> np.ndarray:
        """Envelope midpoint, piecewise-linear between grid points.

        Only grid values are certified; interpolation is a modeling choice
        whose error consumers must absorb.
        """
        xs, lo, hi = self.full_grid()
        return np.interp(x, xs, 0.5 * (lo + hi))


def build_envelope(
    lam0: float,
    eps: float,
    depth: int,
    grid: int,
    eta: float | None = None,
    rho: float = DEFAULT_RHO,
    threads: int = 1,
    table: HalfSumTable | None = None,
) -> TentEnvelope:
    """Bracket phi at every grid point x_i = i/M, i = 0..floor(M/2).

    Grid points with x_i <= 1 - (lam0 + eps) take the exact linear values
    x_i / lam (ranged over the interval in interval mode); the rest are
    inverted by bisection.  Results are independent of the thread count.
    """
    if grid < 2:
        raise ParameterError(f"grid M must be >= 2, got {grid}")
    if table is None:
        table = build_half_sum_table(lam0, depth, eta)
    elif table.lam != lam0 or table.depth != depth:
        raise ParameterError("supplied table does not match (lam0, depth)")
    ctx = BoundsContext.around(table, eps)

    half = grid // 2
    lo = np.empty(half + 1)
    hi = np.empty(half + 1)
    linear_cut = 1.0 - ctx.lam_hi
    bisect_idx = []
    for i in range(half + 1):
        x = i / grid
        if x <= linear_cut:
            if eps == 0.0:
                lo[i] = hi[i] = x / lam0
            else:
                lo[i] = x / ctx.lam_hi
                hi[i] = x / ctx.lam_lo
        else:
            bisect_idx.append(i)

    def solve(i: int) -> tuple[int, float, float]:
        x = i / grid
        return i, phi_lower(ctx, x, rho), phi_upper(ctx, x, rho)

    if threads > 1 and len(bisect_idx) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(solve, bisect_idx))
    else:
        results = [solve(i) for i in bisect_idx]
    for i, y_lo, y_hi in results:
        lo[i] = y_lo
        hi[i] = y_hi

    # Monotone tightening: phi is increasing on [0, 1/2], so running
    # maxima of lower bounds and reverse running minima of upper bounds
    # are still valid bounds and enforce the monotone-grid invariant.
    lo = np.maximum.accumulate(lo)
    hi = np.minimum.accumulate(hi[::-1])[::-1]
    lo.setflags(write=False)
    hi.setflags(write=False)

    return TentEnvelope(
        grid=grid,
        lo=lo,
        hi=hi,
        lam0=lam0,
        eps=eps,
        depth=depth,
        eta=table.eta,
        rho=rho,
    )


def expected_blowup_exponent(lam: float) -> float:
    """The predicted exponent of 1 - phi(1/2 - x) ~ c x^e, e = -log lam / log 2."""
    return float(np.log(1.0 / lam) / np.log(2.0))


def blowup_exponent(phi, x0: float, j0: int, j1: int) -> float:
    """Fit the blow-up rate of phi at 1/2 from a dyadic window.

    Evaluates phi at 1/2 - x for x = x0 * 2^-j, j = j0..j1, and returns the
    least-squares slope of log(1 - phi) against log x.
    """
    if j1 - j0 + 1 < 3:
        raise ParameterError("fit window needs at least 3 points")
    if not (0.0 < x0 <= 0.5):
        raise ParameterError(f"x0 must lie in (0, 1/2], got {x0}")
    xs = np.array([x0 * 2.0 ** -j for j in range(j0, j1 + 1)])
    ys = np.array([1.0 - phi(0.5 - x) for x in xs])
    if np.any(ys <= 0.0):
        raise ParameterError("window reaches phi >= 1; shrink x0 or the depth")
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def sample_truncated_series(
    lam: float, depth: int, n: int, seed: int
) -> np.ndarray:
    """n i.i.d. draws of (1/lam - 1) * sum_{i<=depth} a_i lam^i with fair
    digits; deterministic given the seed."""
    if n <= 0:
        raise ParameterError(f"sample count must be positive, got {n}")
    rng = np.random.default_rng(seed)
    acc = np.zeros(n)
    power = 1.0
    for _ in range(depth):
        power *= lam
        acc += rng.integers(0, 2, size=n).astype(np.float64) * power
    return (1.0 / lam - 1.0) * acc


def ks_against_bounds(
    sample: np.ndarray, table: HalfSumTable, grid: int
) -> float:
    """sup over grid points of |empirical CDF - (F- + F+)/2|."""
    xs = np.arange(grid + 1) / grid
    data = np.sort(sample)
    emp = np.searchsorted(data, xs, side="right") / data.shape[0]
    mid = np.array(
        [0.5 * (f_lower(table, x).value + f_upper(table, x).value) for x in xs]
    )
    return float(np.max(np.abs(emp - mid)))


def invariance_mc(
    table: HalfSumTable,
    envelope: TentEnvelope,
    sample_depth: int = 64,
    n: int = 10 ** 6,
    seed: int = 0,
) -> float:
    """Monte-Carlo check that phi preserves the Bernoulli convolution.

    By the tent symmetry, {phi <= phi(x_i)} is exactly [0, x_i] union
    [1 - x_i, 1], so invariance forces P(S <= x_i or S >= 1 - x_i) to
    equal F(phi(x_i)), which in turn lies inside the certified band
    [F-(lo[i]), F+(hi[i])].  The statistic is the largest distance of the
    empirical fraction from that band over the grid; under invariance it
    is pure sampling noise plus band slack, so it stays within the
    envelope width plus O(1/sqrt(n)).
    """
    if envelope.eps != 0.0:
        raise ParameterError("invariance check requires a point-mode envelope")
    if sample_depth < table.depth:
        raise ParameterError(
            f"sample depth {sample_depth} below table depth {table.depth}"
        )
    sample = np.sort(sample_truncated_series(table.lam, sample_depth, n, seed))
    stat = 0.0
    for i in range(envelope.grid // 2 + 1):
        x = envelope.x(i)
        below = np.searchsorted(sample, x, side="right")
        above = n - np.searchsorted(sample, 1.0 - x, side="left")
        frac = min(below + above, n) / n
        band_lo = f_lower(table, envelope.lo_at(i)).value
        band_hi = f_upper(table, envelope.hi_at(i)).value
        stat = max(stat, band_lo - frac, frac - band_hi)
    return max(stat, 0.0)
