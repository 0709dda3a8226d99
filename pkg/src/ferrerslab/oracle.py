"""Extended-precision reference values (mpmath).

The Ferrers reference uses the classical representation

    P_nu^mu(x) = ((1+x)/(1-x))^(mu/2) * F(nu+1, -nu; 1-mu; (1-x)/2) / Gamma(1-mu),

which shares no code with the u/v form in :mod:`ferrerslab.ferrers`.  The
regularized series ``sum (a)_k (b)_k z^k / (Gamma(c+k) k!)`` is finite at
integer mu, so no limit is needed when it can be summed directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import (
    ExtrapolationUnstableError,
    NoConvergenceError,
    RepresentationDomainError,
)
from .ferrers import DegreeOrder
from .hyp2f1 import HypParams

MIN_DIGITS = 50
DIRECT_RADIUS = 0.9
INTEGER_MU_EPS = mpmath.mpf("1e-30")


@dataclass(frozen=True)
class BigFloatValue:
    value: mpmath.mpc
    precision_digits: int

    def __post_init__(self):
        if self.precision_digits < 0:
            raise ValueError("precision_digits must be non-negative")

    def __complex__(self):
        return complex(self.value)


def _agreement_digits(x, y) -> int:
    scale = max(abs(x), abs(y))
    if scale == 0 or x == y:
        return 10**6
    return max(0, int(mpmath.floor(-mpmath.log10(abs(x - y) / scale))))


def _series(a, b, c, z, digits, regularized=False):
    """Sum the (optionally regularized) Gauss series to ``digits`` digits.

    Valid for |z| < 1; the tail is bounded geometrically once the term
    ratio settles below one.
    """
    a, b, c, z = (mpmath.mpmathify(v) for v in (a, b, c, z))
    target = mpmath.mpf(10) ** (-(digits + 5))
    if regularized:
        t = mpmath.rgamma(c)
    else:
        t = mpmath.mpf(1)
    s = t
    if z == 0:
        return s
    k = 0
    while True:
        if regularized:
            # (a+k)(b+k) z / ((c+k)(k+1)) with Gamma(c+k+1) = (c+k) Gamma(c+k);
            # when Gamma(c+k) is infinite the term is 0 and restarts from rgamma
            if t == 0:
                t = mpmath.rf(a, k + 1) * mpmath.rf(b, k + 1) * z ** (k + 1) * mpmath.rgamma(c + k + 1) / mpmath.factorial(k + 1)
            else:
                t = t * (a + k) * (b + k) * z / ((c + k) * (k + 1))
        else:
            t = t * (a + k) * (b + k) * z / ((c + k) * (k + 1))
        k += 1
        s += t
        if t == 0 and any(mpmath.isint(q) and mpmath.re(q) <= 0 and k > -mpmath.re(q) for q in (a, b)):
            return s
        ratio = abs((a + k) * (b + k) * z / ((c + k) * (k + 1)))
        if t != 0 and ratio < 1 and abs(t) * ratio / (1 - ratio) <= target * max(abs(s), target):
            return s
        if k > 10**6:
            raise NoConvergenceError("reference series did not converge")


def reference_2f1(p: HypParams, w, digits: int = MIN_DIGITS) -> BigFloatValue:
    """Brute-force 2F1 by term summation in extended precision.

    For |w| < DIRECT_RADIUS the series is summed here; closer to the unit
    circle (where direct summation to 50 digits is impractical) mpmath's
    own hypergeometric evaluator is used.  Either way the result is
    certified by repeating at higher precision.
    """
    w = complex(w)
    s = p.c - p.a - p.b
    if abs(w) > 1 or (abs(w) == 1 and s.real <= 0):
        raise NoConvergenceError(f"series does not converge at w = {w}")
    values = []
    for dps in (digits + 10, digits + 30):
        with mpmath.workdps(dps):
            if abs(w) < DIRECT_RADIUS or p.terminating_degree() is not None:
                v = _series(p.a, p.b, p.c, w, dps - 10)
            else:
                v = mpmath.hyp2f1(p.a, p.b, p.c, w)
            values.append(+v)
    with mpmath.workdps(digits + 30):
        d = min(digits, _agreement_digits(values[0], values[1]))
    return BigFloatValue(values[1], d)


def _ferrers_mp(nu, mu, x, dps):
    with mpmath.workdps(dps):
        nu, mu, x = mpmath.mpc(nu), mpmath.mpc(mu), mpmath.mpc(x)
        z = (1 - x) / 2
        factor = mpmath.power(1 + x, mu / 2) * mpmath.power(1 - x, -mu / 2)
        if abs(z) < DIRECT_RADIUS:
            f = _series(nu + 1, -nu, 1 - mu, z, dps - 10, regularized=True)
            return factor * f
        c = 1 - mu
        if mpmath.isint(c) and mpmath.re(c) <= 0:
            # pole of the unregularized evaluator: nudge mu off the integer
            eps = INTEGER_MU_EPS
            f1 = mpmath.hyp2f1(nu + 1, -nu, c - 1j * eps, z) * mpmath.rgamma(c - 1j * eps)
            f2 = mpmath.hyp2f1(nu + 1, -nu, c - 2j * eps, z) * mpmath.rgamma(c - 2j * eps)
            return factor * (2 * f1 - f2)
        return factor * mpmath.hyp2f1(nu + 1, -nu, c, z) * mpmath.rgamma(c)


def reference_ferrers_p(p: DegreeOrder, x, digits: int = MIN_DIGITS) -> BigFloatValue:
    """P_nu^mu(x) in extended precision via the (1-x)/2 series."""
    x = complex(x)
    if x.imag == 0 and abs(x.real) >= 1:
        raise RepresentationDomainError(f"x = {x} lies on a cut")
    lo = _ferrers_mp(p.nu, p.mu, x, digits + 15)
    hi = _ferrers_mp(p.nu, p.mu, x, digits + 40)
    with mpmath.workdps(digits + 40):
        d = min(digits, _agreement_digits(lo, hi))
    return BigFloatValue(hi, d)


def radial_limit_2f1(p: HypParams, w, digits: int = 10) -> BigFloatValue:
    """Value at |w| = 1 as the limit r -> 1- of 2F1(r w).

    Evaluates at r = 1 - 1e-4, 1 - 1e-5, 1 - 1e-6 and extrapolates the
    polynomial in h = 1 - r to h = 0 (Neville).
    """
    w = complex(w)
    s = p.c - p.a - p.b
    if s.real <= -1:
        raise ExtrapolationUnstableError(f"Re(c-a-b) = {s.real} <= -1: no radial limit extrapolation")
    if abs(w - 1) < 1e-12:
        raise ExtrapolationUnstableError("radial limit requested at w = 1")
    hs = [mpmath.mpf("1e-4"), mpmath.mpf("1e-5"), mpmath.mpf("1e-6")]
    with mpmath.workdps(max(digits, 30) + 20):
        ww = mpmath.mpc(w)
        ys = [mpmath.hyp2f1(p.a, p.b, p.c, (1 - h) * ww) for h in hs]
        # two- and three-point Neville estimates at h = 0
        e2 = (hs[1] * ys[2] - hs[2] * ys[1]) / (hs[1] - hs[2])
        e3 = mpmath.mpf(0)
        for i in range(3):
            li = mpmath.mpf(1)
            for j in range(3):
                if i != j:
                    li *= hs[j] / (hs[j] - hs[i])
            e3 += li * ys[i]
        d = _agreement_digits(e2, e3)
    if d < digits:
        raise ExtrapolationUnstableError(f"extrapolants agree to {d} digits, {digits} requested")
    return BigFloatValue(e3, d)
