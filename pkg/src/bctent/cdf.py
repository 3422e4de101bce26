"""Certified two-sided bounds on the distribution function F_lam.

f_lower/f_upper sandwich the true distribution of the random series
(1/lam - 1) * sum a_i lam^i between dyadic values k * 2^-L: truncating the
series after L digits can only undershoot (upper bound), and the discarded
tail is at most lam^L (lower bound after shifting the threshold).  The
interval variants shift thresholds by eps * D, where D dominates the
derivative of the series in lam, so one table at lam0 bounds F_lam for
every lam in [lam0 - eps, lam0 + eps].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .tables import HalfSumTable, count_le


@dataclass(frozen=True)
class DyadicProb:
    """An exact probability count * 2^-depth."""

    count: int
    depth: int

    def __post_init__(self) -> None:
        if not 0 <= self.count <= 1 << self.depth:
            raise ParameterError(
                f"dyadic count {self.count} outside [0, 2^{self.depth}]"
            )

    @property
    def value(self) -> float:
        return math.ldexp(float(self.count), -self.depth)

    def as_fraction(self) -> Fraction:
        return Fraction(self.count, 1 << self.depth)


def f_upper(table: HalfSumTable, x: float) -> DyadicProb:
    """Certified upper bound: F_lam(x) <= count * 2^-L."""
    return DyadicProb(count_le(table, x + table.eta), table.depth)


def f_lower(table: HalfSumTable, x: float) -> DyadicProb:
    """Certified lower bound: F_lam(x) >= count * 2^-L.

    The threshold is shifted by lam^L for the series tail and by eta for
    rounding in the stored sums.
    """
    tail = table.lam ** table.depth
    return DyadicProb(count_le(table, x - tail - table.eta), table.depth)


def _check_interval(lam0: float, eps: float) -> None:
    if eps < 0.0:
        raise ParameterError(f"interval radius must be >= 0, got {eps}")
    if not (0.5 < lam0 - eps and lam0 + eps < 1.0):
        raise ParameterError(
            f"[{lam0 - eps}, {lam0 + eps}] escapes the overlap regime (1/2, 1)"
        )


def lipschitz_D(lam0: float, eps: float) -> float:
    """Supremum of 1/(lam (1 - lam)) over [lam0 - eps, lam0 + eps].

    The function is increasing on (1/2, 1), so the supremum sits at the
    right endpoint.
    """
    _check_interval(lam0, eps)
    hi = lam0 + eps
    return 1.0 / (hi * (1.0 - hi))


@dataclass(frozen=True)
class LambdaInterval:
    """A parameter interval [center - radius, center + radius] with its
    series-derivative bound D."""

    center: float
    radius: float
    D: float

    def __post_init__(self) -> None:
        _check_interval(self.center, self.radius)
        for lam in (self.center - self.radius, self.center, self.center + self.radius):
            if self.D < 1.0 / (lam * (1.0 - lam)):
                raise ParameterError(
                    f"D={self.D} does not dominate 1/(lam(1-lam)) at lam={lam}"
                )

    @classmethod
    def around(cls, lam0: float, eps: float) -> "LambdaInterval":
        return cls(center=lam0, radius=eps, D=lipschitz_D(lam0, eps))


def _check_center(table: HalfSumTable, interval: LambdaInterval) -> None:
    if table.lam != interval.center:
        raise ParameterError(
            f"table built at lambda={table.lam}, interval centered "
            f"at {interval.center}"
        )


def f_lower_interval(
    table: HalfSumTable, interval: LambdaInterval, x: float
) -> DyadicProb:
    """Lower bound valid for every lambda in the interval."""
    _check_center(table, interval)
    return f_lower(table, x - interval.radius * interval.D)


def f_upper_interval(
    table: HalfSumTable, interval: LambdaInterval, x: float
) -> DyadicProb:
    """Upper bound valid for every lambda in the interval."""
    _check_center(table, interval)
    return f_upper(table, x + interval.radius * interval.D)
