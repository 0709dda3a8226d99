"""Ferrers function of the first kind P_nu^mu.

Two routes to the same function:

* the two-term hypergeometric form in ``u = x + i sqrt(1 - x^2)`` and
  ``v = 1/u``, valid on the plane cut along (-inf, -1] and [1, inf);
* with ``x = cos(theta)`` the same form has arguments ``exp(+-2i theta)``
  and, for real theta, expands into the Fourier sine series

      P(cos t) = 2^(mu+1)/sqrt(pi) sin(t)^mu
                 * sum_k G(nu+mu+k+1)/G(nu+k+3/2) (mu+1/2)_k/k! sin((nu+mu+2k+1) t)

  whose convergence depends on Re(mu) and t (see ``classify_convergence``).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AsymptoticUndefinedError, DomainError, ParameterPoleError
from .hyp2f1 import (
    CIRCLE_TOL,
    DISC_TOL,
    PERTURBATION,
    HypParams,
    Method,
    ValueWithError,
    _accelerated_series,
    circle_2f1,
    gauss_2f1,
)
from .special import (
    EPS,
    as_complex,
    gamma_ratio,
    is_nonpositive_integer,
    nonpositive_integer,
    pochhammer,
    principal_power,
    principal_sqrt_one_minus_sq,
    rgamma,
)

HALF_PI_TOL = 1e-12
REAL_THETA_TOL = 1e-14
FOURIER_MAX_TERMS = 200_000
_ANCHOR_EVERY = 256
_LOG2 = math.log(2.0)
_HALF_LOG_PI = 0.5 * math.log(math.pi)


class ConvergenceClass(str, enum.Enum):
    ABSOLUTE = "Absolute"
    CONDITIONAL_NOT_ABSOLUTE = "ConditionalNotAbsolute"
    CONDITIONAL_HALF_PI = "Conditional(theta=pi/2)"
    DIVERGENT = "Divergent"
    OUTSIDE_THEOREM = "OutsideTheorem"


@dataclass(frozen=True)
class DegreeOrder:
    nu: complex
    mu: complex

    def __post_init__(self):
        object.__setattr__(self, "nu", as_complex(self.nu))
        object.__setattr__(self, "mu", as_complex(self.mu))
        s = self.nu + self.mu
        m = nonpositive_integer(s, tol=1e-12)
        if m is not None and m >= 1:
            raise ParameterPoleError(f"nu + mu = {s} is a negative integer")

    @property
    def hyp_params(self) -> HypParams:
        """(a, b, c) = (mu + 1/2, nu + mu + 1, nu + 3/2)."""
        return HypParams(self.mu + 0.5, self.nu + self.mu + 1.0, self.nu + 1.5)

    @property
    def c_is_pole(self) -> bool:
        return is_nonpositive_integer(self.nu + 1.5, tol=1e-12)


@dataclass(frozen=True)
class CutPlanePoint:
    x: complex

    def __post_init__(self):
        x = as_complex(self.x)
        object.__setattr__(self, "x", x)
        principal_sqrt_one_minus_sq(x)  # raises BranchCutError on the cuts


@dataclass(frozen=True)
class ThetaPoint:
    theta: complex

    def __post_init__(self):
        t = as_complex(self.theta)
        if not 0.0 < t.real < math.pi:
            raise DomainError(f"Re theta = {t.real} is outside (0, pi)")
        if abs(t.imag) <= REAL_THETA_TOL:
            t = complex(t.real, 0.0)
        object.__setattr__(self, "theta", t)

    @property
    def is_real(self) -> bool:
        return self.theta.imag == 0.0

    @property
    def x(self) -> complex:
        return cmath.cos(self.theta)


@dataclass(frozen=True)
class FourierTermRecord:
    k: int
    coefficient: complex
    phase_arg: complex
    term: complex
    partial_sum: complex
    abs_partial_sum: float


@dataclass
class SeriesTrace:
    """Column store of the per-index Fourier records."""

    k: np.ndarray
    coefficient: np.ndarray
    phase_arg: np.ndarray
    term: np.ndarray
    partial_sum: np.ndarray
    abs_partial_sum: np.ndarray
    prefactor: complex = field(default=1.0 + 0j)

    def __len__(self):
        return len(self.k)

    def __getitem__(self, i) -> FourierTermRecord:
        return FourierTermRecord(
            int(self.k[i]),
            complex(self.coefficient[i]),
            complex(self.phase_arg[i]),
            complex(self.term[i]),
            complex(self.partial_sum[i]),
            float(self.abs_partial_sum[i]),
        )

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]


def _prefactor(p: DegreeOrder, sin_power: complex) -> complex:
    # 2^mu / (i sqrt(pi)) with 1/i = -i folded into the exponent
    return (
        cmath.exp(p.mu * _LOG2 - _HALF_LOG_PI - 0.5j * math.pi)
        * sin_power
        * gamma_ratio(p.nu + p.mu + 1.0, p.nu + 1.5)
    )


def _uv(x: complex) -> tuple[complex, complex]:
    r = principal_sqrt_one_minus_sq(x)
    u = x + 1j * r
    v = x - 1j * r
    # one of them is computed with cancellation; rebuild it from u v = 1
    if abs(u) >= 1.0:
        v = 1.0 / u
    else:
        u = 1.0 / v
    return u, v


def _perturbed(fn, p: DegreeOrder, *args):
    """Evaluate ``fn`` at nu + i eps and nu + 2i eps and Richardson-extrapolate."""
    r1 = fn(DegreeOrder(p.nu + 1j * PERTURBATION, p.mu), *args)
    r2 = fn(DegreeOrder(p.nu + 2j * PERTURBATION, p.mu), *args)
    value = 2.0 * r1.value - r2.value
    err = 3.0 * (r1.error_estimate + r2.error_estimate) + PERTURBATION * abs(r1.value - r2.value)
    return ValueWithError(value, err, r1.method, r1.terms_used + r2.terms_used, perturbed=True)


def theorem1_bracket(p: DegreeOrder, pt: CutPlanePoint, swap: bool = False, tol: float = DISC_TOL):
    """u^b F(a,b;c;u/v) - v^b F(a,b;c;v/u) with b = nu + mu + 1.

    ``swap`` exchanges the roles of u and v, which negates the bracket.
    Returns (value, error, terms, methods).
    """
    u, v = _uv(pt.x)
    if swap:
        u, v = v, u
    hp = p.hyp_params
    f1 = gauss_2f1(hp, u * u, tol)
    f2 = gauss_2f1(hp, v * v, tol)
    pu = principal_power(u, hp.b)
    pv = principal_power(v, hp.b)
    t1, t2 = pu * f1.value, pv * f2.value
    err = abs(pu) * f1.error_estimate + abs(pv) * f2.error_estimate + 8 * EPS * (abs(t1) + abs(t2))
    return t1 - t2, err, f1.terms_used + f2.terms_used, (f1.method, f2.method)


def _dominant_method(methods) -> Method:
    order = [Method.DIRECT_SERIES, Method.TRANSFORMED, Method.CONTINUED, Method.CIRCLE_ACCELERATED]
    return max(methods, key=order.index)


def eval_theorem1(p: DegreeOrder, pt: CutPlanePoint, tol: float = DISC_TOL) -> ValueWithError:
    """P_nu^mu(x) from the two-term u/v hypergeometric representation."""
    if p.c_is_pole:
        return _perturbed(eval_theorem1, p, pt, tol)
    x = pt.x
    sin_power = principal_power((1.0 - x) * (1.0 + x), 0.5 * p.mu)
    pref = _prefactor(p, sin_power)
    bracket, err, terms, methods = theorem1_bracket(p, pt, tol=tol)
    value = pref * bracket
    # rounding in the Gamma prefactor and the principal powers u^b, v^b
    b = p.nu + p.mu + 1.0
    scale = 1.0 + abs(b) * (abs(cmath.log(_uv(x)[0])) + 1.0) + abs(p.nu) + abs(p.mu)
    err = abs(pref) * err + 16 * EPS * scale * abs(value)
    return ValueWithError(value, err, _dominant_method(methods), terms)


def eval_theta(p: DegreeOrder, t: ThetaPoint, tol: float | None = None) -> ValueWithError:
    """P_nu^mu(cos theta) with 2F1 arguments exp(+-2i theta).

    For real theta both arguments lie on the unit circle and the Gauss
    series is summed there (DivergentRegimeError when Re mu >= 1/2);
    otherwise one argument is inside the disc and the other outside.
    """
    if p.c_is_pole:
        return _perturbed(eval_theta, p, t, tol)
    th = t.theta
    hp = p.hyp_params
    wp, wm = cmath.exp(2j * th), cmath.exp(-2j * th)
    if t.is_real:
        ctol = CIRCLE_TOL if tol is None else tol
        wp, wm = complex(math.cos(2 * th.real), math.sin(2 * th.real)), complex(math.cos(2 * th.real), -math.sin(2 * th.real))
        fp, fm = circle_2f1(hp, wp, ctol), circle_2f1(hp, wm, ctol)
    else:
        dtol = DISC_TOL if tol is None else tol
        fp, fm = gauss_2f1(hp, wp, dtol), gauss_2f1(hp, wm, dtol)
    ep, em = cmath.exp(1j * hp.b * th), cmath.exp(-1j * hp.b * th)
    pref = _prefactor(p, principal_power(cmath.sin(th), p.mu))
    t1, t2 = ep * fp.value, em * fm.value
    value = pref * (t1 - t2)
    err = abs(pref) * (abs(ep) * fp.error_estimate + abs(em) * fm.error_estimate + 8 * EPS * (abs(t1) + abs(t2)))
    return ValueWithError(value, err, _dominant_method([fp.method, fm.method]), fp.terms_used + fm.terms_used)


def fourier_coefficient(p: DegreeOrder, k: int) -> complex:
    """G(nu+mu+k+1)/G(nu+k+3/2) * (mu+1/2)_k / k!, evaluated in log space."""
    a = p.mu + 0.5
    m = nonpositive_integer(a, tol=0.0)
    if m is not None:
        if k > m:
            return 0j
        poch = pochhammer(a, k) / math.factorial(k)
    else:
        poch = gamma_ratio(a, 1.0, k) * rgamma(a)
    if poch == 0:
        return 0j
    ratio = gamma_ratio(p.nu + p.mu + 1.0, p.nu + 1.5, k)
    return ratio * poch


def coefficient_asymptotic(p: DegreeOrder, k: int) -> complex:
    """Leading behaviour k^(2 mu - 1) / Gamma(mu + 1/2) of the coefficients."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if is_nonpositive_integer(p.mu + 0.5):
        raise AsymptoticUndefinedError(f"1/Gamma(mu + 1/2) vanishes for mu = {p.mu}")
    return principal_power(float(k), 2.0 * p.mu - 1.0) * rgamma(p.mu + 0.5)


def fourier_coefficients(p: DegreeOrder, n: int) -> np.ndarray:
    """Coefficients for k = 0..n by the term recurrence, re-anchored in log space."""
    out = np.empty(n + 1, dtype=complex)
    nu, mu = p.nu, p.mu
    prev = 0j
    for k in range(n + 1):
        if k % _ANCHOR_EVERY == 0 or prev == 0:
            cur = fourier_coefficient(p, k)
        else:
            j = k - 1
            cur = prev * (nu + mu + j + 1.0) * (mu + 0.5 + j) / ((nu + j + 1.5) * (j + 1.0))
        out[k] = cur
        prev = cur
    return out


def classify_order(mu, theta: float) -> ConvergenceClass:
    """Regime of the Fourier series at real theta in (0, pi); depends on mu only."""
    theta = float(theta)
    if not 0.0 < theta < math.pi:
        raise DomainError(f"theta = {theta} is outside (0, pi)")
    half_pi = abs(theta - 0.5 * math.pi) <= HALF_PI_TOL
    re_mu = as_complex(mu).real
    if re_mu < 0:
        return ConvergenceClass.ABSOLUTE
    if re_mu < 0.5:
        return ConvergenceClass.CONDITIONAL_HALF_PI if half_pi else ConvergenceClass.CONDITIONAL_NOT_ABSOLUTE
    return ConvergenceClass.OUTSIDE_THEOREM if half_pi else ConvergenceClass.DIVERGENT


def classify_convergence(p: DegreeOrder, theta: float) -> ConvergenceClass:
    """Regime of the Fourier series of P_nu^mu at real theta in (0, pi)."""
    return classify_order(p.mu, theta)


def fourier_prefactor(p: DegreeOrder, theta: float) -> complex:
    """2^(mu+1)/sqrt(pi) * sin(theta)^mu."""
    return cmath.exp((p.mu + 1.0) * _LOG2 - _HALF_LOG_PI) * principal_power(math.sin(theta), p.mu)


def _phases(p: DegreeOrder, theta: float, n: int) -> np.ndarray:
    k = np.arange(n + 1, dtype=float)
    return (p.nu + p.mu + 1.0) * theta + 2.0 * theta * k


def fourier_partial_sum(p: DegreeOrder, theta: float, n: int) -> tuple[ValueWithError, SeriesTrace]:
    """Partial sum k = 0..n of the Fourier series, with its full trace.

    The error estimate is a tail bound from the k^(2 Re mu - 1) coefficient
    envelope when the series converges absolutely, a heuristic
    oscillatory-tail estimate in the conditional regime, and infinite when
    the series diverges.
    """
    theta = float(theta)
    cls = classify_convergence(p, theta)
    if n < 0:
        raise ValueError("n must be >= 0")
    pref = fourier_prefactor(p, theta)
    coef = fourier_coefficients(p, n)
    phase = _phases(p, theta, n)
    terms = pref * coef * np.sin(phase)
    psum = np.cumsum(terms)
    apsum = np.cumsum(np.abs(terms))
    trace = SeriesTrace(np.arange(n + 1), coef, phase, terms, psum, apsum, pref)

    re_mu = p.mu.real
    max_sin = math.cosh(abs(p.nu.imag + p.mu.imag) * theta)
    cn = abs(coef[-1])
    rigorous = False
    if _terminates(p, n):
        err = 8 * EPS * float(apsum[-1])
        rigorous = True
    elif cls is ConvergenceClass.ABSOLUTE:
        # sum_{k>n} k^(2 Re mu - 1) <= n^(2 Re mu) / (-2 Re mu), scaled to |c_n|
        err = 2.0 * abs(pref) * max_sin * cn * max(n, 1) / (-2.0 * re_mu)
        rigorous = n > 4.0 * (abs(p.nu) + abs(p.mu) + 2.0)
    elif cls in (ConvergenceClass.CONDITIONAL_NOT_ABSOLUTE, ConvergenceClass.CONDITIONAL_HALF_PI):
        err = 2.0 * abs(pref) * max_sin * cn / max(math.sin(theta), 1e-300)
    else:
        err = math.inf
    err += 8 * EPS * float(apsum[-1])
    value = complex(psum[-1])
    return ValueWithError(value, err, Method.FOURIER_SERIES, n + 1, rigorous=rigorous), trace


def _terminates(p: DegreeOrder, n: int) -> bool:
    m = nonpositive_integer(p.mu + 0.5, tol=0.0)
    return m is not None and n >= m


def accelerated_fourier_sum(p: DegreeOrder, theta: float, tol: float = CIRCLE_TOL) -> ValueWithError:
    """Limit of the Fourier series via epsilon-accelerated exponential halves.

    sin(phi_k) is split into exp(+i phi_k) and exp(-i phi_k); each half is a
    series with a single rotating factor exp(+-2ik theta), which the
    epsilon table handles well.  Meaningful only where the series converges.
    """
    theta = float(theta)
    cls = classify_convergence(p, theta)
    if cls in (ConvergenceClass.DIVERGENT, ConvergenceClass.OUTSIDE_THEOREM):
        raise DomainError(f"Fourier series does not converge ({cls.value})")
    pref = fourier_prefactor(p, theta)
    if _terminates(p, 0) or nonpositive_integer(p.mu + 0.5, tol=0.0) is not None:
        n = nonpositive_integer(p.mu + 0.5, tol=0.0)
        res, _ = fourier_partial_sum(p, theta, n)
        return res
    gap = abs(1.0 - cmath.exp(2j * theta))
    start = int(4 * (abs(p.nu) + abs(p.mu) + 2)) + int(16.0 / gap) + 8
    best = None
    while True:
        n = start + 26
        coef = fourier_coefficients(p, n)
        phase = _phases(p, theta, n)
        plus = list(coef * np.exp(1j * phase))
        minus = list(coef * np.exp(-1j * phase))
        vp, ep, _ = _accelerated_series(plus, tol, start)
        vm, em, _ = _accelerated_series(minus, tol, start)
        v = pref * (vp - vm) / 2j
        e = 4.0 * abs(pref) * (ep + em) / 2.0
        if best is None or e < best[1]:
            best = (v, e, n)
        if e <= tol * max(1.0, abs(v)) or start > 8192:
            break
        start *= 2
    v, e, n = best
    return ValueWithError(v, e + 8 * EPS * abs(v), Method.CIRCLE_ACCELERATED, n)


def _fourier_terms_needed(p: DegreeOrder, theta: float, tol: float) -> float:
    re_mu = p.mu.real
    scale = abs(fourier_prefactor(p, theta) * rgamma(p.mu + 0.5)) * math.cosh(abs(p.nu.imag + p.mu.imag) * theta)
    if scale == 0:
        return 1.0
    # tail ~ 2 scale n^(2 Re mu) / (-2 Re mu) <= tol
    return (tol * (-2.0 * re_mu) / (2.0 * scale)) ** (1.0 / (2.0 * re_mu))


def ferrers_p(p: DegreeOrder, point, tol: float = DISC_TOL) -> ValueWithError:
    """P_nu^mu at a CutPlanePoint or ThetaPoint, choosing the evaluation route.

    Complex points use the u/v representation (complex theta uses the
    theta form).  On (-1, 1): Re mu < 0 sums the Fourier series when its
    tail bound reaches ``tol`` within FOURIER_MAX_TERMS terms;
    0 <= Re mu < 1/2 sums the Gauss series on the unit circle; otherwise,
    or when the cheaper route is unavailable, the u/v representation is
    used with analytic continuation onto the circle.
    """
    if isinstance(point, ThetaPoint):
        if not point.is_real:
            return eval_theta(p, point, tol)
        theta = point.theta.real
        cut_point = CutPlanePoint(math.cos(theta))
    elif isinstance(point, CutPlanePoint):
        if point.x.imag != 0.0:
            return eval_theorem1(p, point, tol)
        theta = math.acos(point.x.real)
        cut_point = point
    else:
        raise TypeError(f"unsupported point {point!r}")

    re_mu = p.mu.real
    if re_mu < 0 and not p.c_is_pole:
        n = _fourier_terms_needed(p, theta, tol)
        if n <= FOURIER_MAX_TERMS:
            res, _ = fourier_partial_sum(p, theta, max(int(math.ceil(n)), 16))
            if res.error_estimate <= tol * max(1.0, abs(res.value)):
                return res
    if re_mu < 0.5:
        res = eval_theta(p, ThetaPoint(theta), tol)
        if res.error_estimate <= max(tol, CIRCLE_TOL) * max(1.0, abs(res.value)):
            return res
    return eval_theorem1(p, cut_point, tol)
