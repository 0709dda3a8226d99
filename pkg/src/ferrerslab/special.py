"""Complex gamma-family primitives and principal branches.

Complex scalars are plain Python ``complex``.  ``log_gamma`` uses the
Stirling series after an upward recurrence shift, so the returned branch
is the one continuous on the plane cut along the negative real axis and
it satisfies ``lg(z + 1) = lg(z) + Log z`` exactly in exact arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BranchCutError, DomainError, PoleError

EPS = 2.220446049250313e-16
CUT_TOL = 1e-12
RATIO_CROSSOVER = 10_000

_LOG_2PI_HALF = 0.5 * math.log(2.0 * math.pi)
_STIRLING_R = 16.0
_REFLECT_BELOW = -60.0

# B_{2j} / (2j (2j - 1)), j = 1..12
_BERNOULLI_2J = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730),
]
_STIRLING_COEFFS = [
    float(b / ((2 * j) * (2 * j - 1))) for j, b in enumerate(_BERNOULLI_2J, start=1)
]


class TrivialZero(complex):
    """An exact zero produced by a reciprocal-gamma pole, not by cancellation."""

    def __new__(cls):
        return super().__new__(cls, 0.0, 0.0)

    def __repr__(self):
        return "TrivialZero()"


TRIVIAL_ZERO = TrivialZero()


@dataclass(frozen=True)
class LogGammaValue:
    log_modulus: float
    phase: float

    @property
    def value(self) -> complex:
        return complex(self.log_modulus, self.phase)

    def exp(self) -> complex:
        return cmath.exp(self.value)


def as_complex(z) -> complex:
    """Coerce to ``complex``, dropping signed zeros and rejecting NaN/inf."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite value {z!r}")
    return complex(z.real + 0.0, z.imag + 0.0)


def nonpositive_integer(z: complex, tol: float | None = None) -> int | None:
    """Return ``n`` if ``z`` is within ``tol`` of the integer ``-n <= 0``."""
    r = round(z.real)
    if r > 0:
        return None
    if tol is None:
        tol = 8 * EPS * max(1.0, abs(r))
    if abs(z - r) <= tol:
        return -int(r)
    return None


def is_nonpositive_integer(z: complex, tol: float | None = None) -> bool:
    return nonpositive_integer(z, tol) is not None


def log1p(w: complex) -> complex:
    """Principal log(1 + w), accurate for small |w|."""
    x, y = w.real, w.imag
    re = 0.5 * math.log1p(2.0 * x + x * x + y * y) if abs(w) < 0.5 else math.log(abs(1 + w))
    return complex(re, math.atan2(y, 1.0 + x))


def _stirling(z: complex) -> complex:
    # valid for Re z >= 0 and |z| >= _STIRLING_R
    r = 1.0 / z
    r2 = r * r
    s = 0.0
    p = r
    for c in _STIRLING_COEFFS:
        s += c * p
        p *= r2
    return (z - 0.5) * cmath.log(z) - z + _LOG_2PI_HALF + s


def _shift_count(z: complex) -> int:
    if abs(z.imag) < _STIRLING_R:
        return max(0, math.ceil(_STIRLING_R - z.real))
    return max(0, math.ceil(-z.real))


def _log_sin_pi(z: complex) -> complex:
    y = z.imag
    if abs(y) < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    if y > 0:
        e = cmath.exp(2j * math.pi * z)
        return -1j * math.pi * z + log1p(-e) - math.log(2.0) + 0.5j * math.pi
    e = cmath.exp(-2j * math.pi * z)
    return 1j * math.pi * z + log1p(-e) - math.log(2.0) - 0.5j * math.pi


def _lgamma(z: complex) -> complex:
    """Complex log-gamma without pole checking (callers check)."""
    if z.real < _REFLECT_BELOW:
        return math.log(math.pi) - _log_sin_pi(z) - _lgamma(1.0 - z)
    n = _shift_count(z)
    if n == 0:
        return _stirling(z)
    acc = 0.0
    for j in range(n):
        acc += cmath.log(z + j)
    return _stirling(z + n) - acc


def log_gamma(z) -> LogGammaValue:
    """log Gamma(z) as (log|Gamma|, continuous phase).

    Raises PoleError at the non-positive integers.
    """
    z = as_complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}")
    v = _lgamma(z)
    return LogGammaValue(v.real, v.imag)


def gamma(z) -> complex:
    return log_gamma(z).exp()


def rgamma(z) -> complex:
    """1/Gamma(z); exactly zero at the poles of Gamma."""
    z = as_complex(z)
    if is_nonpositive_integer(z):
        return TRIVIAL_ZERO
    return cmath.exp(-_lgamma(z))


def log_gamma_difference(x: complex, y: complex, d: complex | None = None) -> complex:
    """log Gamma(x) - log Gamma(y) without the large-argument cancellation.

    Both arguments are shifted by the same integer into the Stirling region
    and the leading terms are differenced analytically.  Only the
    exponential is meaningful: the imaginary part may differ from
    ``lg(x) - lg(y)`` by a multiple of 2*pi.  Pass ``d = x - y`` when it
    is known more accurately than the rounded difference.
    """
    if x.real < _REFLECT_BELOW or y.real < _REFLECT_BELOW:
        return _lgamma(x) - _lgamma(y)
    n = max(_shift_count(x), _shift_count(y))
    if d is None:
        d = x - y
    acc = 0.0
    for j in range(n):
        acc += cmath.log(x + j) - cmath.log(y + j)
    X, Y = x + n, y + n
    if abs(d) < 0.5 * abs(Y):
        dlog = log1p(d / Y)
    else:
        dlog = cmath.log(X) - cmath.log(Y)
    lead = (X - 0.5) * dlog + d * cmath.log(Y) - d
    rx, ry = 1.0 / X, 1.0 / Y
    rx2, ry2 = rx * rx, ry * ry
    px, py = rx, ry
    series = 0.0
    for c in _STIRLING_COEFFS:
        series += c * (px - py)
        px *= rx2
        py *= ry2
    return lead + series - acc


def _bernoulli_poly(n: int, h: complex) -> complex:
    if n == 2:
        return h * h - h + 1.0 / 6.0
    if n == 3:
        return h * (h * (h - 1.5) + 0.5)
    if n == 4:
        return h * h * (h * (h - 2.0) + 1.0) - 1.0 / 30.0
    if n == 5:
        return h * (h * h * (h * (h - 2.5) + 5.0 / 3.0) - 1.0 / 6.0)
    raise ValueError(n)


def _log_gamma_ratio_asymptotic(a: complex, b: complex, k: int) -> complex:
    # log Gamma(k+a) - log Gamma(k+b) ~ (a-b) log k
    #     + sum_j (-1)^(j+1) (B_{j+1}(a) - B_{j+1}(b)) / (j (j+1) k^j)
    s = (a - b) * math.log(k)
    kp = 1.0
    for j in range(1, 5):
        kp *= k
        s += (-1) ** (j + 1) * (_bernoulli_poly(j + 1, a) - _bernoulli_poly(j + 1, b)) / (j * (j + 1) * kp)
    return s


def gamma_ratio(a, b, k: int = 0, *, path: str = "auto") -> complex:
    """Gamma(a + k) / Gamma(b + k).

    ``path`` may force ``"direct"`` or ``"asymptotic"``; ``"auto"`` uses the
    asymptotic expansion for ``k >= RATIO_CROSSOVER``.  A denominator pole
    gives :data:`TRIVIAL_ZERO`, a numerator pole raises PoleError.
    """
    a, b = as_complex(a), as_complex(b)
    if k < 0:
        raise ValueError("k must be non-negative")
    x, y = a + k, b + k
    if a == b:
        return 1.0 + 0j
    mx, my = nonpositive_integer(x), nonpositive_integer(y)
    if mx is not None and my is not None:
        # limit of Gamma(-m + e) / Gamma(-n + e)
        sign = -1.0 if (mx - my) % 2 else 1.0
        return complex(sign * math.exp(math.lgamma(my + 1) - math.lgamma(mx + 1)))
    if mx is not None:
        raise PoleError(f"numerator Gamma({x}) is infinite")
    if my is not None:
        return TRIVIAL_ZERO
    if path == "auto":
        path = "asymptotic" if k >= RATIO_CROSSOVER and max(abs(a), abs(b)) <= 1e-2 * k else "direct"
    if path == "asymptotic":
        if k < 1:
            raise ValueError("asymptotic path needs k >= 1")
        return cmath.exp(_log_gamma_ratio_asymptotic(a, b, k))
    return cmath.exp(log_gamma_difference(x, y, a - b))


def pochhammer(a, k: int) -> complex:
    """Rising factorial a (a+1) ... (a+k-1)."""
    a = as_complex(a)
    m = nonpositive_integer(a, tol=0.0)
    if m is not None and m < k:
        return 0j
    p = 1.0 + 0j
    for j in range(k):
        p *= a + j
        if not (math.isfinite(p.real) and math.isfinite(p.imag)):
            raise OverflowError(f"pochhammer({a}, {k}) overflows; use log_pochhammer")
    return p


def log_pochhammer(a, k: int) -> complex:
    """log (a)_k for a, a + k off the poles of Gamma."""
    a = as_complex(a)
    if k == 0:
        return 0j
    if is_nonpositive_integer(a) or is_nonpositive_integer(a + k):
        raise PoleError(f"log_pochhammer undefined for a={a}, k={k}")
    return log_gamma_difference(a + k, a, complex(k))


def on_cut(x: complex, tol: float = CUT_TOL) -> bool:
    """True if x is within ``tol`` of (-inf, -1] or [1, inf)."""
    return abs(x.imag) <= tol and abs(x.real) >= 1.0 - tol


def principal_sqrt_one_minus_sq(x) -> complex:
    """sqrt(1 - x^2), positive on (-1, 1) and continuous off the cuts."""
    x = as_complex(x)
    if on_cut(x):
        raise BranchCutError(f"x = {x} lies on a branch cut")
    return cmath.sqrt(1.0 - x) * cmath.sqrt(1.0 + x)


def principal_power(z, alpha) -> complex:
    """exp(alpha * Log z) with Im Log z in (-pi, pi]."""
    z, alpha = as_complex(z), as_complex(alpha)
    if z == 0:
        if alpha.real > 0:
            return 0j
        raise DomainError(f"0 ** {alpha} is undefined")
    return cmath.exp(alpha * cmath.log(z))
