"""Named algebraic contraction ratios.

Each preset is the root in (0, 1) of an explicit integer polynomial,
located by bisection to full binary64 precision, so tests never depend on
hand-typed decimals.  For inverses of algebraic numbers beta > 1 the
polynomial is the reversed (reciprocal) one.
"""

from __future__ import annotations

from .errors import ParameterError


def _bisect_root(f, lo: float, hi: float) -> float:
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise ParameterError(f"no sign change on [{lo}, {hi}]")
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


def _poly(*coeffs: float):
    # coeffs in increasing degree order
    def f(x: float) -> float:
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    return f


_PRESETS = {
    # 2^(-1/2): root of 2x^2 - 1
    "sqrt2": (_poly(-1.0, 0.0, 2.0), 0.5, 1.0),
    # 2^(-1/3): root of 2x^3 - 1
    "cbrt2": (_poly(-1.0, 0.0, 0.0, 2.0), 0.5, 1.0),
    # (sqrt(5)-1)/2, inverse golden ratio: root of x^2 + x - 1
    "golden": (_poly(-1.0, 1.0, 1.0), 0.5, 1.0),
    # inverse of the real root of x^3 - x - 1 (the plastic number)
    "plastic-inv": (_poly(1.0, 0.0, -1.0, -1.0), 0.5, 1.0),
    # inverse of the Pisot root of x^4 - x^3 - 1
    "pisot-x4": (_poly(1.0, -1.0, 0.0, 0.0, -1.0), 0.5, 1.0),
    # inverse of the Salem number 1.17628... (Lehmer's number); its
    # palindromic degree-10 polynomial has the inverse as a root too,
    # and it is the unique real root in (1/2, 1)
    "salem-x5": (
        _poly(1.0, 1.0, 0.0, -1.0, -1.0, -1.0, -1.0, -1.0, 0.0, 1.0, 1.0),
        0.5,
        1.0,
    ),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset_lambda(name: str) -> float:
    try:
        f, lo, hi = _PRESETS[name]
    except KeyError:
        raise ParameterError(
            f"unknown lambda preset {name!r}; choose from {', '.join(PRESET_NAMES)}"
        ) from None
    return _bisect_root(f, lo, hi)
