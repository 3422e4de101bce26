"""Discrete convexity certification for the tent maps.

"Convex up to scale 1/M" means the midpoint inequalities
phi(x_i) <= (phi(x_{i-1}) + phi(x_{i+1})) / 2 hold on the grid x_i = i/M
over [0, 1/2].  Envelope brackets make the check one-sided in both
directions: hi[i] <= (lo[i-1] + lo[i+1]) / 2 certifies the inequality for
the true map, while lo[i] > (hi[i-1] + hi[i+1]) / 2 refutes it.

Triples whose midpoint sits in the linear region need no numerics.  There
phi(x_{i-1}) and phi(x_i) equal x/lam exactly, so on a uniform grid the
inequality reduces to phi(x_{i+1}) >= x_{i+1}/lam, which holds for every
x because the self-similarity 2 F(y) = F(y/lam) + F((y-1+lam)/lam) gives
2 F(y) >= F(y/lam), i.e. phi(y) = F^{-1}(2 F(y)) >= y/lam.  These triples
have true margin zero whenever x_{i+1} is also linear, so a strict
envelope comparison could never certify them; the analytic argument both
settles them and is the only way to do so.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict

from .envelope import (
    DEFAULT_RHO,
    BoundsContext,
    TentEnvelope,
    build_envelope,
    phi_bounds,
)
from .errors import ParameterError
from .tables import HalfSumTable, build_half_sum_table

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConvexityCertificate:
    lam0: float
    eps: float
    depth: int
    grid: int
    eta: float
    rho: float
    status: str
    scale: float
    witness: int | None
    witness_x: float | None
    min_margin: float
    checked_range: tuple[int, int] | None
    # Interval-mode refutation only shows SOME lambda in the interval
    # violates the inequality; this flag keeps that quantifier explicit.
    exists_witness: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.checked_range is not None:
            d["checked_range"] = list(self.checked_range)
        return d


def _overlap_lambda(lam: float) -> None:
    if not (0.5 < lam < 1.0):
        raise ParameterError(f"convexity check requires lambda in (1/2, 1), got {lam}")


def certify_envelope(envelope: TentEnvelope) -> ConvexityCertificate:
    """Evaluate the three-way verdict on an already-built envelope."""
    m = envelope.grid
    lam_hi = envelope.lam0 + envelope.eps
    cut = 1.0 - lam_hi
    # Check every i with x_{i+1} > 1 - lam and x_i < 1/2.  This includes
    # the junction triple straddling the linear region, whose in-region
    # points carry exact values.
    checked = [
        i
        for i in range(1, (m + 1) // 2)
        if (i + 1) / m > cut
    ]

    if not checked:
        # Nothing beyond the linear region resolves on this grid; the
        # linear part is trivially convex.
        return ConvexityCertificate(
            lam0=envelope.lam0,
            eps=envelope.eps,
            depth=envelope.depth,
            grid=m,
            eta=envelope.eta,
            rho=envelope.rho,
            status=CERTIFIED,
            scale=1.0 / m,
            witness=None,
            witness_x=None,
            min_margin=float("inf"),
            checked_range=None,
        )

    min_margin = float("inf")
    refute_witness: int | None = None
    fail_witness: int | None = None
    for i in checked:
        if i / m <= cut:
            # Midpoint (and left point) in the linear region: holds by the
            # analytic inequality phi(y) >= y/lam (module docstring).
            continue
        margin = (
            0.5 * (envelope.lo_at(i - 1) + envelope.lo_at(i + 1))
            - envelope.hi_at(i)
        )
        if margin < min_margin:
            min_margin = margin
        if margin >= 0.0:
            continue
        if envelope.lo_at(i) > 0.5 * (
            envelope.hi_at(i - 1) + envelope.hi_at(i + 1)
        ):
            if refute_witness is None:
                refute_witness = i
        elif fail_witness is None:
            fail_witness = i

    if refute_witness is not None:
        status, witness = REFUTED, refute_witness
    elif fail_witness is not None:
        status, witness = INCONCLUSIVE, fail_witness
    else:
        status, witness = CERTIFIED, None

    return ConvexityCertificate(
        lam0=envelope.lam0,
        eps=envelope.eps,
        depth=envelope.depth,
        grid=m,
        eta=envelope.eta,
        rho=envelope.rho,
        status=status,
        scale=1.0 / m,
        witness=witness,
        witness_x=None if witness is None else witness / m,
        min_margin=min_margin,
        checked_range=(checked[0], checked[-1]),
        exists_witness=(status == REFUTED and envelope.eps > 0.0),
    )


def check_point(
    lam: float,
    depth: int,
    grid: int,
    eta: float | None = None,
    rho: float = DEFAULT_RHO,
    threads: int = 1,
    table: HalfSumTable | None = None,
) -> ConvexityCertificate:
    """Point-mode verdict at a single lambda."""
    _overlap_lambda(lam)
    env = build_envelope(lam, 0.0, depth, grid, eta, rho, threads, table)
    return certify_envelope(env)


def check_interval(
    lam0: float,
    eps: float,
    depth: int,
    grid: int,
    eta: float | None = None,
    rho: float = DEFAULT_RHO,
    threads: int = 1,
    table: HalfSumTable | None = None,
) -> ConvexityCertificate:
    """Verdict holding uniformly over [lam0 - eps, lam0 + eps].

    Certified means certified for every lambda in the interval; refuted
    only asserts a violating lambda exists (exists_witness is set).
    """
    if eps == 0.0:
        return check_point(lam0, depth, grid, eta, rho, threads, table)
    _overlap_lambda(lam0 - eps)
    _overlap_lambda(lam0 + eps)
    env = build_envelope(lam0, eps, depth, grid, eta, rho, threads, table)
    return certify_envelope(env)


def recheck_refutation(
    cert: ConvexityCertificate,
    depth: int,
    eta: float | None = None,
    rho: float | None = None,
    table: HalfSumTable | None = None,
) -> ConvexityCertificate:
    """Re-test a refutation's witness triple alone at a deeper table.

    A refuted verdict rests on one midpoint inequality at the witness; the
    other grid points are irrelevant to it.  Re-bounding just those three
    points makes persistence checks affordable at depths where a full grid
    pass is not, at the cost of only re-deciding that one inequality:
    the result is refuted if the violation still stands, certified if it
    has flipped to a proof, and inconclusive otherwise.
    """
    if cert.status != REFUTED or cert.witness is None:
        raise ParameterError("recheck requires a refuted certificate")
    if rho is None:
        rho = cert.rho
    if table is None:
        table = build_half_sum_table(cert.lam0, depth, eta)
    elif table.lam != cert.lam0 or table.depth != depth:
        raise ParameterError("supplied table does not match (lam0, depth)")
    ctx = BoundsContext.around(table, cert.eps)

    m = cert.grid
    i = cert.witness
    (lo_l, hi_l) = phi_bounds(ctx, (i - 1) / m, rho)
    (lo_m, hi_m) = phi_bounds(ctx, i / m, rho)
    (lo_r, hi_r) = phi_bounds(ctx, (i + 1) / m, rho)

    min_margin = 0.5 * (lo_l + lo_r) - hi_m
    if lo_m > 0.5 * (hi_l + hi_r):
        status = REFUTED
    elif min_margin >= 0.0:
        status = CERTIFIED
    else:
        status = INCONCLUSIVE

    return ConvexityCertificate(
        lam0=cert.lam0,
        eps=cert.eps,
        depth=depth,
        grid=m,
        eta=table.eta,
        rho=rho,
        status=status,
        scale=1.0 / m,
        witness=i if status == REFUTED else None,
        witness_x=i / m if status == REFUTED else None,
        min_margin=min_margin,
        checked_range=(i, i),
        exists_witness=(status == REFUTED and cert.eps > 0.0),
    )


def scan(
    lam_from: float,
    lam_to: float,
    step: float,
    depth: int,
    grid: int,
    eta: float | None = None,
    rho: float = DEFAULT_RHO,
    threads: int = 1,
) -> list[ConvexityCertificate]:
    """Point-mode certificates over an arithmetic lambda grid, in lambda
    order regardless of execution order."""
    if step <= 0.0:
        raise ParameterError(f"scan step must be > 0, got {step}")
    if lam_to < lam_from:
        raise ParameterError("empty scan range: lambda_to < lambda_from")
    count = int((lam_to - lam_from) / step + 1e-9) + 1
    lams = [lam_from + k * step for k in range(count)]
    for lam in lams:
        _overlap_lambda(lam)

    if threads > 1 and len(lams) > 1:
        def job(lam: float) -> ConvexityCertificate:
            return check_point(lam, depth, grid, eta, rho, threads=1)

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(job, lams))
    return [check_point(lam, depth, grid, eta, rho, threads=threads) for lam in lams]
