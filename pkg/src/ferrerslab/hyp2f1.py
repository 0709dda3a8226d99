"""Gauss hypergeometric function 2F1(a, b; c; w).

Inside ``|w| <= RHO_DIRECT`` the power series is summed directly.  Outside
it, one of the five fractional-linear connection formulas maps ``w`` back
into the disc; when every applicable formula is degenerate (an integer
parameter difference puts a Gamma pole in a connection coefficient) or
leaves the argument too large, the hypergeometric ODE is integrated by
Taylor re-expansion along a path from the disc to ``w``.

On the unit circle the series itself can be summed with
:func:`circle_2f1`, which accelerates the slowly convergent partial sums.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import (
    AtOneError,
    BranchError,
    CPoleError,
    DegenerateConnectionError,
    DivergentRegimeError,
    DomainError,
)
from .special import (
    EPS,
    _lgamma,
    as_complex,
    is_nonpositive_integer,
    nonpositive_integer,
    principal_power,
)

RHO_DIRECT = 0.75
DISC_TOL = 1e-12
CIRCLE_TOL = 1e-8
MAX_TERMS = 1_000_000
CIRCLE_RADIUS_TOL = 1e-12
PERTURBATION = 1e-7
# connection coefficients with a parameter difference this close to an
# integer lose too many digits to cancellation; auto mode avoids them
NEAR_DEGENERATE = 1e-6
# series are truncated this far below the requested tolerance
_GUARD = 1e-3

TRANSFORMS = ("w/(w-1)", "1-w", "1/w", "1/(1-w)", "1-1/w")


class Method(str, enum.Enum):
    DIRECT_SERIES = "DirectSeries"
    TRANSFORMED = "Transformed"
    CIRCLE_ACCELERATED = "CircleAccelerated"
    CONTINUED = "TaylorContinued"
    FOURIER_SERIES = "FourierSeries"


class CircleRegime(str, enum.Enum):
    ABSOLUTELY_CONVERGENT = "AbsolutelyConvergent"
    CONDITIONALLY_CONVERGENT = "ConditionallyConvergent"
    DIVERGENT = "Divergent"
    AT_ONE = "AtOne"


@dataclass(frozen=True)
class HypParams:
    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_complex(getattr(self, name)))
        if is_nonpositive_integer(self.c):
            raise CPoleError(f"c = {self.c} is a pole of the series")

    @property
    def excess(self) -> complex:
        """c - a - b, which governs the behaviour at |w| = 1."""
        return self.c - self.a - self.b

    def terminating_degree(self) -> int | None:
        """m if a or b equals -m (exactly), else None."""
        ms = [nonpositive_integer(z, tol=0.0) for z in (self.a, self.b)]
        ms = [m for m in ms if m is not None]
        return min(ms) if ms else None


@dataclass(frozen=True)
class ValueWithError:
    value: complex
    error_estimate: float
    method: Method
    terms_used: int
    perturbed: bool = False
    rigorous: bool = False

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be non-negative")
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")


def series_term_stream(p: HypParams, w) -> Iterator[complex]:
    """Terms (a)_k (b)_k w^k / ((c)_k k!) of the Gauss series, k = 0, 1, ..."""
    w = as_complex(w)
    a, b, c = p.a, p.b, p.c
    t = 1.0 + 0j
    k = 0
    while True:
        yield t
        t = t * (a + k) * (b + k) * w / ((c + k) * (k + 1))
        k += 1


def _direct_sum(a, b, c, w, tol=DISC_TOL, max_terms=MAX_TERMS):
    """Sum the series; returns (value, error_estimate, terms_used).

    Stops when |term| <= tol |sum| for three consecutive terms while the
    term ratio is below one, or when the series terminates.
    """
    s = 1.0 + 0j
    t = 1.0 + 0j
    abs_sum = 1.0
    small = 0
    k = 0
    ratio = 0.0
    while k < max_terms:
        r = (a + k) * (b + k) * w / ((c + k) * (k + 1))
        t = t * r
        k += 1
        if t == 0:
            return s, 4 * EPS * abs_sum, k
        s += t
        at = abs(t)
        abs_sum += at
        ratio = abs(r)
        if at <= tol * abs(s) and ratio < 1.0:
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    else:
        raise DomainError(f"2F1 series did not converge in {max_terms} terms at w={w}")
    aw = abs(w)
    tail = at * min(ratio, aw) / (1.0 - min(ratio, aw)) if min(ratio, aw) < 1 else at * k
    return s, 10.0 * tail + 4 * EPS * abs_sum, k + 1


def _gamma_quotient(num, den, near=0.0):
    """prod Gamma(num) / prod Gamma(den); zero on a denominator pole.

    A numerator within ``near`` of a pole raises DegenerateConnectionError.
    """
    for z in num:
        if is_nonpositive_integer(z) or (near and is_nonpositive_integer(z, near)):
            raise DegenerateConnectionError(f"Gamma({z}) in connection coefficient")
    if any(is_nonpositive_integer(z) for z in den):
        return 0j
    return cmath.exp(sum(_lgamma(z) for z in num) - sum(_lgamma(z) for z in den))


def transformed_argument(name: str, w: complex) -> complex:
    if name == "w/(w-1)":
        return w / (w - 1.0)
    if name == "1-w":
        return 1.0 - w
    if name == "1/w":
        return 1.0 / w
    if name == "1/(1-w)":
        return 1.0 / (1.0 - w)
    if name == "1-1/w":
        return 1.0 - 1.0 / w
    raise ValueError(f"unknown transformation {name!r}")


def _transform_pieces(name, a, b, c, w, near):
    """[(coefficient, a', b', c', z')] whose weighted 2F1 sum equals F(a,b;c;w)."""
    z = transformed_argument(name, w)
    if name == "w/(w-1)":
        return [(principal_power(1.0 - w, -a), a, c - b, c, z)]
    if name == "1-w":
        s = c - a - b
        g1 = _gamma_quotient([c, s], [c - a, c - b], near)
        g2 = _gamma_quotient([c, -s], [a, b], near)
        return [
            (g1, a, b, 1.0 - s, z),
            (g2 * principal_power(1.0 - w, s), c - a, c - b, 1.0 + s, z),
        ]
    if name == "1/w":
        g1 = _gamma_quotient([c, b - a], [b, c - a], near)
        g2 = _gamma_quotient([c, a - b], [a, c - b], near)
        return [
            (g1 * principal_power(-w, -a), a, a - c + 1.0, a - b + 1.0, z),
            (g2 * principal_power(-w, -b), b, b - c + 1.0, b - a + 1.0, z),
        ]
    if name == "1/(1-w)":
        g1 = _gamma_quotient([c, b - a], [b, c - a], near)
        g2 = _gamma_quotient([c, a - b], [a, c - b], near)
        return [
            (g1 * principal_power(1.0 - w, -a), a, c - b, a - b + 1.0, z),
            (g2 * principal_power(1.0 - w, -b), b, c - a, b - a + 1.0, z),
        ]
    if name == "1-1/w":
        s = c - a - b
        g1 = _gamma_quotient([c, s], [c - a, c - b], near)
        g2 = _gamma_quotient([c, -s], [a, b], near)
        return [
            (g1 * principal_power(w, -a), a, a - c + 1.0, 1.0 - s, z),
            (g2 * principal_power(1.0 - w, s) * principal_power(w, a - c), c - a, 1.0 - a, 1.0 + s, z),
        ]
    raise ValueError(f"unknown transformation {name!r}")


def _eval_transform(name, p, w, tol, near=0.0):
    pieces = _transform_pieces(name, p.a, p.b, p.c, w, near)
    value = 0j
    err = 0.0
    terms = 0
    for coef, a2, b2, c2, z in pieces:
        if coef == 0:
            continue
        if is_nonpositive_integer(c2):
            raise DegenerateConnectionError(f"transformed series has c = {c2}")
        f, e, n = _direct_sum(a2, b2, c2, z, tol)
        value += coef * f
        err += abs(coef) * e + 32 * EPS * abs(coef * f)
        terms += n
    return value, err, max(terms, 1)


def _transform_applicable(name, p, w, near):
    """True when the connection coefficients of ``name`` are finite at ``p``."""
    a, b, c = p.a, p.b, p.c
    if name == "w/(w-1)":
        return True
    if name in ("1-w", "1-1/w"):
        s = c - a - b
        return not (is_nonpositive_integer(s, near) or is_nonpositive_integer(-s, near))
    d = a - b
    return not (is_nonpositive_integer(d, near) or is_nonpositive_integer(-d, near))


def _step_taylor(a, b, c, z0, f, df, h):
    """Advance (F, F') from z0 to z0 + h using the ODE's Taylor recurrence."""
    p0 = z0 * (1.0 - z0)
    p1 = 1.0 - 2.0 * z0
    q0 = c - (a + b + 1.0) * z0
    q1 = -(a + b + 1.0)
    ab = a * b
    t_prev, t_cur = f, df  # t_0, t_1
    hn = h  # h^1
    val = f + df * h
    dval = df + 0j
    abs_terms = abs(f) + abs(df * h)
    small = 0
    n = 0
    while n < 2000:
        t_next = -((p1 * n + q0) * (n + 1) * t_cur + (-n * (n - 1) + q1 * n - ab) * t_prev) / (p0 * (n + 2) * (n + 1))
        hd = hn  # h^(n+1)
        hn = hn * h  # h^(n+2)
        term = t_next * hn
        dterm = (n + 2) * t_next * hd
        val += term
        dval += dterm
        abs_terms += abs(term)
        n += 1
        if abs(term) <= 1e-17 * abs(val) and abs(dterm) <= 1e-17 * abs(dval):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        t_prev, t_cur = t_cur, t_next
    return val, dval, abs_terms, n + 2


def _segment_distance(p, q, z):
    d = q - p
    if d == 0:
        return abs(z - p)
    t = ((z - p) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p + t * d - z)


def _continuation_path(w):
    start = 0.5 * w / abs(w)
    path = [start, w]
    if _segment_distance(start, w, 1.0) < 0.4 and abs(w - 1.0) > 0.4:
        sigma = 1.0 if w.imag >= 0 else -1.0
        path = [start, 1.0 + 0.75j * sigma, w]
    return path


def _taylor_continue(p, w):
    a, b, c = p.a, p.b, p.c
    path = _continuation_path(w)
    z = path[0]
    f, ef, n0 = _direct_sum(a, b, c, z, 1e-17)
    df, edf, n1 = _direct_sum(a + 1.0, b + 1.0, c + 1.0, z, 1e-17)
    df *= a * b / c
    terms = n0 + n1
    err = ef + EPS * abs(f)
    for target in path[1:]:
        while z != target:
            radius = min(abs(z), abs(1.0 - z))
            step = target - z
            if abs(step) > 0.5 * radius:
                step = step * (0.5 * radius / abs(step))
                nz = z + step
            else:
                nz = target
            f, df, abs_terms, n = _step_taylor(a, b, c, z, f, df, nz - z)
            terms += n
            err += 8 * EPS * abs_terms
            z = nz
    return f, err + 4 * EPS * abs(f), terms


def _check_argument(w):
    if abs(w.imag) <= 0.0 and w.real >= 1.0:
        raise BranchError(f"w = {w} lies on the branch cut [1, inf)")


def gauss_2f1(p: HypParams, w, tol: float = DISC_TOL, transform: str = "auto") -> ValueWithError:
    """Principal branch of 2F1(a, b; c; w) for w off [1, inf).

    ``transform`` forces one of :data:`TRANSFORMS` (raising
    DegenerateConnectionError if its coefficients hit a pole) or
    ``"direct"``; ``"auto"`` picks the best route.
    """
    w = as_complex(w)
    if w == 0:
        return ValueWithError(1.0 + 0j, 0.0, Method.DIRECT_SERIES, 1)
    m = p.terminating_degree()
    if transform == "direct" or (transform == "auto" and (m is not None or abs(w) <= RHO_DIRECT)):
        if m is None:
            _check_argument(w)
            if abs(w) >= 1:
                raise DomainError(f"direct series diverges at |w| = {abs(w)}")
        v, e, n = _direct_sum(p.a, p.b, p.c, w, tol * _GUARD, MAX_TERMS if m is None else m + 2)
        return ValueWithError(v, e, Method.DIRECT_SERIES, n)
    _check_argument(w)
    if transform != "auto":
        if abs(transformed_argument(transform, w)) >= 1:
            raise DomainError(f"{transform} does not map w = {w} into the unit disc")
        v, e, n = _eval_transform(transform, p, w, tol * _GUARD)
        return ValueWithError(v, e, Method.TRANSFORMED, n)
    # Pfaff first on ties: it has a single term and cannot cancel
    candidates = sorted(
        (round(abs(transformed_argument(name, w)), 12), name != "w/(w-1)", name)
        for name in TRANSFORMS
        if _transform_applicable(name, p, w, NEAR_DEGENERATE)
    )
    if candidates and candidates[0][0] <= RHO_DIRECT:
        v, e, n = _eval_transform(candidates[0][2], p, w, tol * _GUARD)
        if e <= tol * abs(v):
            return ValueWithError(v, e, Method.TRANSFORMED, n)
        v2, e2, n2 = _taylor_continue(p, w)
        if e2 < e:
            return ValueWithError(v2, e2, Method.CONTINUED, n + n2)
        return ValueWithError(v, e, Method.TRANSFORMED, n + n2)
    v, e, n = _taylor_continue(p, w)
    return ValueWithError(v, e, Method.CONTINUED, n)


def perturbed_2f1(p: HypParams, w, tol: float = DISC_TOL, eps: float = PERTURBATION) -> ValueWithError:
    """2F1 with c nudged along the imaginary axis and Richardson-extrapolated.

    Intended for limits such as F(a, b; c; w) / Gamma(c) near a pole of c,
    where callers combine two nudged evaluations; here c is moved by i*eps
    and 2i*eps and the O(eps) error is cancelled.
    """
    f1 = gauss_2f1(HypParams(p.a, p.b, p.c + 1j * eps), w, tol)
    f2 = gauss_2f1(HypParams(p.a, p.b, p.c + 2j * eps), w, tol)
    v = 2.0 * f1.value - f2.value
    err = 3.0 * (f1.error_estimate + f2.error_estimate) + abs(f1.value - f2.value) * eps
    return ValueWithError(v, err, f1.method, f1.terms_used + f2.terms_used, perturbed=True)


def circle_regime(p: HypParams, w) -> CircleRegime:
    """Convergence regime of the Gauss series at a point of |w| = 1."""
    w = as_complex(w)
    if abs(w - 1.0) <= CIRCLE_RADIUS_TOL:
        return CircleRegime.AT_ONE
    s = p.excess.real
    if s > 0:
        return CircleRegime.ABSOLUTELY_CONVERGENT
    if s > -1:
        return CircleRegime.CONDITIONALLY_CONVERGENT
    return CircleRegime.DIVERGENT


def wynn_epsilon(sums: list[complex]) -> list[complex]:
    """Even-column diagonal estimates eps_{2m}^{(0)}, m = 0, 1, ..."""
    n = len(sums)
    prev = [0j] * (n + 1)
    cur = list(sums)
    out = [sums[0]]
    for col in range(1, n):
        nxt = []
        for i in range(len(cur) - 1):
            diff = cur[i + 1] - cur[i]
            if diff == 0:
                # stalled column: the sequence is already exact here
                return out + [cur[i + 1]]
            nxt.append(prev[i + 1] + 1.0 / diff)
        prev, cur = cur, nxt
        if col % 2 == 0:
            out.append(cur[0])
    return out


def accelerate(sums: list[complex], max_order: int = 12) -> tuple[complex, float]:
    """Limit of a partial-sum sequence by the epsilon algorithm.

    Returns (estimate, error) where error is the distance between the two
    highest-order diagonal estimates.
    """
    sums = sums[: 2 * max_order + 1]
    est = wynn_epsilon(sums)
    if len(est) < 2:
        return est[-1], abs(sums[-1] - sums[-2]) if len(sums) > 1 else 0.0
    return est[-1], abs(est[-1] - est[-2])


def _accelerated_series(terms, tol, start, max_order=12):
    """Accelerate the sum of ``terms`` with the epsilon table started at ``start``.

    Returns (estimate, error, terms_used) for the diagonal order whose
    stabilization error, the sum of the last two diagonal differences, is
    smallest.
    """
    s = sum(terms[:start], 0j)
    sums = []
    for t in terms[start : start + 2 * max_order + 1]:
        s += t
        sums.append(s)
    est = wynn_epsilon(sums)
    best = None
    for m in range(2, len(est)):
        v = est[m]
        e = abs(est[m] - est[m - 1]) + abs(est[m - 1] - est[m - 2])
        if best is None or e < best[1]:
            best = (v, e, start + 2 * m + 1)
    if best is None:
        return sums[-1], abs(sums[-1] - sums[-2]), start + len(sums)
    return best


def circle_2f1(p: HypParams, w, tol: float = CIRCLE_TOL) -> ValueWithError:
    """Sum the Gauss series at a point of the unit circle.

    Absolutely convergent series whose envelope tail falls below ``tol``
    within 10^5 terms are summed directly; otherwise the partial sums are
    accelerated with the epsilon algorithm.
    """
    w = as_complex(w)
    if abs(abs(w) - 1.0) > CIRCLE_RADIUS_TOL:
        raise DomainError(f"|w| = {abs(w)} is not on the unit circle")
    m = p.terminating_degree()
    if m is not None:
        v, e, n = _direct_sum(p.a, p.b, p.c, w, tol, m + 2)
        return ValueWithError(v, e, Method.DIRECT_SERIES, n)
    regime = circle_regime(p, w)
    s = p.excess
    if regime is CircleRegime.AT_ONE:
        if s.real <= 0:
            raise AtOneError(f"series diverges at w = 1 (Re(c-a-b) = {s.real})")
        v = _gamma_quotient([p.c, s], [p.c - p.a, p.c - p.b])
        return ValueWithError(v, 4 * EPS * abs(v), Method.DIRECT_SERIES, 1, rigorous=True)
    if regime is CircleRegime.DIVERGENT:
        raise DivergentRegimeError(f"Re(c-a-b) = {s.real} <= -1: series diverges at w = {w}")

    a, b, c = p.a, p.b, p.c
    # index after which the term ratio settles near w
    settle = int(4 * (abs(a) + abs(b) + abs(c))) + 8
    # the oscillation w^k needs several periods before the table locks on
    settle = max(settle, int(16.0 / abs(1.0 - w)))
    if regime is CircleRegime.ABSOLUTELY_CONVERGENT and s.real > 1.0:
        total = 1.0 + 0j
        t = 1.0 + 0j
        k = 0
        while k < 100_000:
            t = t * (a + k) * (b + k) * w / ((c + k) * (k + 1))
            k += 1
            total += t
            # sum_{j>k} j^{-1-s} <= k^{-s}/s applied to the term envelope
            tail = abs(t) * (k + 1) / s.real if k > settle else math.inf
            if tail <= tol * max(1.0, abs(total)) * 1e-2:
                return ValueWithError(total, tail, Method.DIRECT_SERIES, k + 1, rigorous=True)
    terms = []
    t = 1.0 + 0j
    for k in range(settle + 26):
        terms.append(t)
        t = t * (a + k) * (b + k) * w / ((c + k) * (k + 1))
    best = None
    start = settle
    while True:
        if len(terms) < start + 25:
            for k in range(len(terms), start + 26):
                terms.append(t)
                t = t * (a + k) * (b + k) * w / ((c + k) * (k + 1))
        v, e, n = _accelerated_series(terms, tol, start)
        if best is None or e < best[1]:
            best = (v, e, n)
        if e <= tol * max(1.0, abs(v)) or start > 4096:
            break
        start *= 2
    v, e, n = best
    return ValueWithError(v, 4.0 * e + 8 * EPS * abs(v), Method.CIRCLE_ACCELERATED, n)
