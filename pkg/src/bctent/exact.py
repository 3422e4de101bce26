"""Closed-form oracles: the small-lambda tent maps and the lam = 1/sqrt(2)
distribution with its induced map.

At lam = 1/sqrt(2) the distribution F is piecewise quadratic/linear with
three pieces, so phi(x) = F^-1(2 F(x)) can be inverted in closed form.
We invert F directly rather than hard-coding a piecewise phi: the
second/third transition of phi sits where 2 F(x) = 1 - sqrt(2)/4, i.e.
x ~ 0.39605, and a fourth analytic piece appears between there and
1/(1 + sqrt(2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError

SQRT2 = math.sqrt(2.0)

# F pieces at lam = 1/sqrt(2):
#   F(x) = A x^2                 on [0, B1]
#   F(x) = S x - sqrt(2)/4       on [B1, B2]
#   F(x) = 1 - A (1 - x)^2       on [B2, 1]
_A = 1.0 + 0.75 * SQRT2
_S = 1.0 + 1.0 / SQRT2
_B1 = 1.0 / (1.0 + SQRT2)
_B2 = SQRT2 / (1.0 + SQRT2)
_P1 = SQRT2 / 4.0          # F(B1)
_P2 = 1.0 - SQRT2 / 4.0    # F(B2)


def exact_small_lambda_tent(lam: float, x: float) -> float:
    """The explicit non-overlap map: up on [0, lam], flat at 1, down on
    [1 - lam, 1]."""
    if not (0.0 < lam <= 0.5):
        raise ParameterError(f"small-lambda tent requires 0 < lam <= 1/2, got {lam}")
    if not (0.0 <= x <= 1.0):
        raise ParameterError(f"x must lie in [0, 1], got {x}")
    if x <= lam:
        return x / lam
    if x < 1.0 - lam:
        return 1.0
    return 1.0 - (x - (1.0 - lam)) / lam


def exact_F_sqrt2(x: float) -> float:
    """Three-piece distribution function at lam = 1/sqrt(2)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if x <= _B1:
        return _A * x * x
    if x <= _B2:
        return _S * x - _P1
    return 1.0 - _A * (1.0 - x) * (1.0 - x)


def exact_F_sqrt2_inv(p: float) -> float:
    """Closed-form inverse of exact_F_sqrt2 on [0, 1]."""
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    if p <= _P1:
        return math.sqrt(p / _A)
    if p <= _P2:
        return (p + _P1) / _S
    return 1.0 - math.sqrt((1.0 - p) / _A)


def exact_phi_sqrt2(x: float) -> float:
    """phi(x) = F^-1(2 F(x)) at lam = 1/sqrt(2), mirrored on [1/2, 1]."""
    if not (0.0 <= x <= 1.0):
        raise ParameterError(f"x must lie in [0, 1], got {x}")
    u = x if x <= 0.5 else 1.0 - x
    return exact_F_sqrt2_inv(2.0 * exact_F_sqrt2(u))


@dataclass(frozen=True)
class ExactMap:
    """A map with closed forms for evaluation and branch inversion."""

    kind: str  # "small-lambda-tent" | "sqrt2"
    lam: float

    def __post_init__(self) -> None:
        if self.kind == "small-lambda-tent":
            if not (0.0 < self.lam <= 0.5):
                raise ParameterError("small-lambda-tent requires lam <= 1/2")
        elif self.kind == "sqrt2":
            if self.lam != 2.0 ** -0.5:
                raise ParameterError("sqrt2 map fixes lam = 2^(-1/2)")
        else:
            raise ParameterError(f"unknown exact map kind {self.kind!r}")

    @classmethod
    def sqrt2(cls) -> "ExactMap":
        return cls(kind="sqrt2", lam=2.0 ** -0.5)

    @classmethod
    def small_tent(cls, lam: float) -> "ExactMap":
        return cls(kind="small-lambda-tent", lam=lam)

    def phi(self, x: float) -> float:
        if self.kind == "sqrt2":
            return exact_phi_sqrt2(x)
        return exact_small_lambda_tent(self.lam, x)

    def preimage_increasing(self, t: float) -> float:
        """The preimage of t under the increasing branch on [0, 1/2].

        For the sqrt2 map this solves 2 F(b) = F(t); for the small tent
        the increasing branch is x/lam.
        """
        if not (0.0 <= t <= 1.0):
            raise ParameterError(f"t must lie in [0, 1], got {t}")
        if self.kind == "sqrt2":
            return exact_F_sqrt2_inv(0.5 * exact_F_sqrt2(t))
        return self.lam * t
