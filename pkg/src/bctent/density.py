"""Rychlik-style bounds on the invariant density.

Under the piecewise-convexity hypothesis the map's inverse-derivative has
bounded variation, and the variation inequality specializes to

    var h <= 2^(n-1) lam^n / (min|C_n| (1 - 2 lam^n)),   sup h <= 1 + var h,

for any n with 2 lam^n < 1, where C_n is the generation-n cylinder
partition.  min|C_n| is bounded from below by bracketing the iterated
preimages of 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

from .envelope import DEFAULT_RHO, BoundsContext, _largest_where, _smallest_where
from .errors import ParameterError, PrecisionError
from .exact import ExactMap
from .tables import build_half_sum_table

HYPOTHESIS = "piecewise-convex"


@dataclass(frozen=True)
class RychlikBound:
    lam: float
    n: int
    min_cyl: float
    var_bound: float
    sup_bound: float
    hypothesis: str = HYPOTHESIS

    def to_dict(self) -> dict:
        return asdict(self)


def minimal_admissible_n(lam: float) -> int:
    """Smallest n with 2 lam^n < 1."""
    if not (0.0 < lam < 1.0):
        raise ParameterError(f"lambda must lie in (0, 1), got {lam}")
    return math.floor(math.log(2.0) / math.log(1.0 / lam)) + 1


def _preimage_bracket(
    ctx: BoundsContext, t_lo: float, t_hi: float, rho: float
) -> tuple[float, float]:
    """Bracket the increasing-branch preimage of [t_lo, t_hi].

    phi(b) = t means 2 F(b) = F(t), so F+(b_lo) <= F-(t_lo)/2 forces
    b_lo <= b, and F-(b_hi) >= F+(t_hi)/2 forces b_hi >= b; both reduce to
    integer count comparisons.
    """
    k_lo = ctx.f_lower(t_lo).count
    k_hi = ctx.f_upper(t_hi).count
    b_lo = _largest_where(lambda y: 2 * ctx.f_upper(y).count <= k_lo, rho)
    b_hi = _smallest_where(lambda y: 2 * ctx.f_lower(y).count >= k_hi, rho)
    return b_lo, b_hi


def min_cylinder_length(
    source: ExactMap | BoundsContext, n: int, rho: float = DEFAULT_RHO
) -> float:
    """Lower bound on the shortest generation-n cylinder.

    Partition points are 0, 1 and the iterated preimages of 1/2 up to
    depth n - 1; each point is carried as a bracket and adjacent brackets
    are combined conservatively.
    """
    if n < 1:
        raise ParameterError(f"generation n must be >= 1, got {n}")
    if isinstance(source, BoundsContext) and source.interval is not None:
        raise ParameterError("cylinder estimation requires a point-mode context")

    points: list[tuple[float, float]] = [(0.0, 0.0), (1.0, 1.0), (0.5, 0.5)]
    frontier: list[tuple[float, float]] = [(0.5, 0.5)]
    for _ in range(n - 1):
        new: list[tuple[float, float]] = []
        for t_lo, t_hi in frontier:
            if isinstance(source, ExactMap):
                b = source.preimage_increasing(t_lo)
                b_lo = b_hi = b
            else:
                b_lo, b_hi = _preimage_bracket(source, t_lo, t_hi, rho)
            new.append((b_lo, b_hi))
            new.append((1.0 - b_hi, 1.0 - b_lo))
        points.extend(new)
        frontier = new

    points.sort(key=lambda p: 0.5 * (p[0] + p[1]))
    min_gap = math.inf
    for (_, prev_hi), (next_lo, _) in zip(points, points[1:]):
        gap = next_lo - prev_hi
        if gap <= 0.0:
            raise PrecisionError(
                "preimage brackets overlap; the envelope is too wide to "
                "separate generation-{} cylinders, increase L".format(n)
            )
        min_gap = min(min_gap, gap)
    return min_gap


def rychlik_bounds(lam: float, n: int, min_cyl: float) -> RychlikBound:
    """Closed-form variation and sup bounds from a cylinder-length bound."""
    if not (0.0 < lam < 1.0):
        raise ParameterError(f"lambda must lie in (0, 1), got {lam}")
    if min_cyl <= 0.0:
        raise ParameterError(f"min cylinder length must be > 0, got {min_cyl}")
    if 2.0 * lam ** n >= 1.0:
        raise ParameterError(
            f"need 2 lam^n < 1 but 2*{lam}^{n} = {2.0 * lam ** n}; "
            f"minimal admissible n is {minimal_admissible_n(lam)}"
        )
    var_bound = (2.0 ** (n - 1) * lam ** n) / (min_cyl * (1.0 - 2.0 * lam ** n))
    return RychlikBound(
        lam=lam,
        n=n,
        min_cyl=min_cyl,
        var_bound=var_bound,
        sup_bound=1.0 + var_bound,
    )


def sup_density_pipeline(
    lam: float,
    depth: int,
    n: int | None = None,
    eta: float | None = None,
    rho: float = DEFAULT_RHO,
) -> RychlikBound:
    """Compose: pick n (minimal admissible unless overridden), bound
    min|C_n| from a point-mode envelope context, apply the bounds."""
    if n is None:
        n = minimal_admissible_n(lam)
    table = build_half_sum_table(lam, depth, eta)
    ctx = BoundsContext.point(table)
    min_cyl = min_cylinder_length(ctx, n, rho)
    return rychlik_bounds(lam, n, min_cyl)
