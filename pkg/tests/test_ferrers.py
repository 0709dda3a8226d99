import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ferrerslab.errors import (
    AsymptoticUndefinedError,
    BranchCutError,
    DivergentRegimeError,
    DomainError,
    ParameterPoleError,
)
from ferrerslab.ferrers import (
    HALF_PI_TOL,
    ConvergenceClass,
    CutPlanePoint,
    DegreeOrder,
    SeriesTrace,
    ThetaPoint,
    accelerated_fourier_sum,
    classify_convergence,
    coefficient_asymptotic,
    eval_theorem1,
    eval_theta,
    ferrers_p,
    fourier_coefficient,
    fourier_coefficients,
    fourier_partial_sum,
    theorem1_bracket,
)
from ferrerslab.hyp2f1 import Method
from ferrerslab.special import gamma

SQRT_PI = math.sqrt(math.pi)


def closed_mu_minus_half(theta):
    """P_0^{-1/2}(cos theta) = (2/(pi sin theta))^{1/2} 2 sin(theta/2)."""
    return math.sqrt(2 / (math.pi * math.sin(theta))) * 2 * math.sin(theta / 2)


def legendre(n, x):
    p0, p1 = 1.0, x
    if n == 0:
        return p0
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    return p1


# ---------------------------------------------------------------- domain types

def test_parameter_pole():
    with pytest.raises(ParameterPoleError):
        DegreeOrder(0.5, -2.5)
    DegreeOrder(0.5, -0.5)  # nu + mu = 0 is allowed


@pytest.mark.parametrize("x", [1.0, -1.0, 2.5, -1.5 + 1e-13j])
def test_cut_points_rejected(x):
    with pytest.raises(BranchCutError):
        CutPlanePoint(x)


@pytest.mark.parametrize("theta", [0.0, math.pi, -0.2, 3.5 + 0.1j])
def test_theta_range(theta):
    with pytest.raises(DomainError):
        ThetaPoint(theta)


# ---------------------------------------------------------------- eval_theorem1

@pytest.mark.parametrize("x", [0.3, -0.9, 0.4 + 0.6j, -1.5 - 0.2j, 3j])
def test_theorem1_p0(x):
    r = eval_theorem1(DegreeOrder(0, 0), CutPlanePoint(x))
    assert abs(r.value - 1) <= 1e-13


@pytest.mark.parametrize("nu, x, want", [(1, 0.3, 0.3), (2, 0.5, -0.125), (3, -0.2, 0.28)])
def test_theorem1_legendre(nu, x, want):
    r = eval_theorem1(DegreeOrder(nu, 0), CutPlanePoint(x))
    assert abs(r.value - want) <= 1e-13


def test_theorem1_oracle_value():
    # reference_ferrers_p(nu=0.3+0.1i, mu=0.2, x=0.4+0.6i) at 50 digits
    want = complex(0.70523571561997325340, 0.20599460006251996575)
    r = eval_theorem1(DegreeOrder(0.3 + 0.1j, 0.2), CutPlanePoint(0.4 + 0.6j))
    assert abs(r.value - want) <= 1e-12 * abs(want)
    assert abs(r.value - want) <= 10 * r.error_estimate + 1e-15


@pytest.mark.parametrize("nu, mu, x, want", [
    # c = nu + 3/2 is a Gamma pole: perturbed evaluation (oracle values, 50 digits)
    (-1.5, 0.3, 0.2, 0.39674110461534942399),
    (-1.5, 0.3, 0.3 + 0.4j, 0.4640200632343133733 + 0.3017890463328852532j),
    (-2.5, -0.5 + 0.2j, -0.6, -0.44408242947793594654 - 0.09631964855224578717j),
])
def test_theorem1_c_pole(nu, mu, x, want):
    r = eval_theorem1(DegreeOrder(nu, mu), CutPlanePoint(x))
    assert r.perturbed
    assert abs(r.value - want) <= 1e-9 * abs(want)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2),
       st.floats(-2, 2), st.floats(-2, 2))
def test_bracket_antisymmetry(nr, ni, mr, mi, xr, xi):
    x = complex(xr, xi)
    assume(not (abs(x.imag) < 1e-3 and abs(x.real) > 0.99))
    try:
        p = DegreeOrder(complex(nr, ni), complex(mr, mi))
        pt = CutPlanePoint(x)
    except DomainError:
        assume(False)
    assume(not p.c_is_pole)
    b1, e1, _, _ = theorem1_bracket(p, pt)
    b2, e2, _, _ = theorem1_bracket(p, pt, swap=True)
    assert abs(b1 + b2) <= 1e-12 * abs(b1) + 4 * (e1 + e2)


@given(st.floats(-2.5, 2.5), st.floats(-2.5, 2.5), st.floats(-0.99, 0.99))
def test_realness(nu, mu, x):
    try:
        p = DegreeOrder(nu, mu)
    except ParameterPoleError:
        assume(False)
    r = eval_theorem1(p, CutPlanePoint(x))
    assert abs(r.value.imag) <= 1e-10 * (1 + abs(r.value))


# ---------------------------------------------------------------- eval_theta

@pytest.mark.parametrize("nu, mu, theta, want", [
    (0, 0, 1.0, 1.0),
    (0, -0.5, 1.0, closed_mu_minus_half(1.0)),
    (1, 0, math.pi / 3, 0.5),
])
def test_eval_theta_examples(nu, mu, theta, want):
    r = eval_theta(DegreeOrder(nu, mu), ThetaPoint(theta))
    assert abs(r.value - want) <= 1e-10


def test_eval_theta_divergent_regime():
    with pytest.raises(DivergentRegimeError):
        eval_theta(DegreeOrder(0.3, 1.0), ThetaPoint(1.0))


@pytest.mark.parametrize("theta", [0.7 + 0.3j, 2.0 - 0.5j, 1.2 + 2j])
@pytest.mark.parametrize("nu, mu", [(0.3, 1.0), (1.5 + 0.5j, -0.7), (2, 0.25)])
def test_complex_theta_matches_theorem1(nu, mu, theta):
    p = DegreeOrder(nu, mu)
    a = eval_theta(p, ThetaPoint(theta))
    b = eval_theorem1(p, CutPlanePoint(cmath.cos(theta)))
    assert abs(a.value - b.value) <= 1e-11 * max(1, abs(b.value))


def _route_cases(n=100, seed=2024):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        nu = complex(*rng.uniform(-2, 2, 2))
        mu = complex(*rng.uniform(-2, 2, 2))
        if abs(nu) > 2 or abs(mu) > 2 or mu.real >= 0.5:
            continue  # the circle series only converges for Re mu < 1/2
        try:
            p = DegreeOrder(nu, mu)
        except ParameterPoleError:
            continue
        out.append(p)
    return out


@pytest.mark.parametrize("theta", [0.3, 1.0, math.pi / 2, 2.5])
def test_route_agreement(theta):
    failures = []
    for p in _route_cases():
        a = eval_theorem1(p, CutPlanePoint(math.cos(theta)))
        b = eval_theta(p, ThetaPoint(theta))
        if abs(a.value - b.value) > 10 * (a.error_estimate + b.error_estimate):
            failures.append((p, abs(a.value - b.value), a.error_estimate + b.error_estimate))
    assert not failures


# ---------------------------------------------------------------- coefficients

def test_coefficient_k0():
    assert fourier_coefficient(DegreeOrder(0, -0.5), 0) == pytest.approx(2.0, rel=1e-15)
    p = DegreeOrder(0.3 + 0.2j, 0.7)
    assert fourier_coefficient(p, 0) == pytest.approx(gamma(p.nu + p.mu + 1) / gamma(p.nu + 1.5), rel=1e-13)


@pytest.mark.parametrize("k", [1, 2, 50, 10**5])
def test_coefficient_mu_minus_half_vanishes(k):
    assert fourier_coefficient(DegreeOrder(0.7, -0.5), k) == 0


@pytest.mark.parametrize("nu, mu", [(0.3, 0.2), (1.5, -0.4), (0.1 + 0.2j, 0.3), (-0.7, -1.3 + 0.4j)])
def test_coefficient_asymptotic_ratio(nu, mu):
    p = DegreeOrder(nu, mu)
    k = 10**5
    r = fourier_coefficient(p, k) / coefficient_asymptotic(p, k)
    assert abs(r - 1) <= 0.01


@pytest.mark.parametrize("mu, k, want", [
    (0.5, 7, 1.0),
    (0.0, 4, 1 / (4 * SQRT_PI)),
    # exp((2 mu - 1) ln 100) / Gamma(mu + 1/2), mpmath at 40 digits
    (0.3 + 0.1j, 100, 0.07244112541309214458 + 0.11710238943651684997j),
])
def test_coefficient_asymptotic_examples(mu, k, want):
    got = coefficient_asymptotic(DegreeOrder(0.4, mu), k)
    assert abs(got - want) <= 1e-14 * abs(want)


def test_coefficient_asymptotic_undefined():
    with pytest.raises(AsymptoticUndefinedError):
        coefficient_asymptotic(DegreeOrder(0.4, -1.5), 10)


@pytest.mark.parametrize("nu, mu", [(0.3, 0.25), (1.5 + 0.5j, -1.2), (-0.7, 0.9), (2.0, -2.5)])
def test_coefficient_recurrence_matches_direct(nu, mu):
    p = DegreeOrder(nu, mu)
    c = fourier_coefficients(p, 1000)
    for k in (0, 1, 7, 255, 256, 257, 999, 1000):
        want = fourier_coefficient(p, k)
        assert abs(c[k] - want) <= 1e-12 * abs(want) + 1e-300


# ---------------------------------------------------------------- classification

@pytest.mark.parametrize("mu, theta, want", [
    (-1, 2.0, ConvergenceClass.ABSOLUTE),
    (0.25, 1.0, ConvergenceClass.CONDITIONAL_NOT_ABSOLUTE),
    (0.25, math.pi / 2, ConvergenceClass.CONDITIONAL_HALF_PI),
    (0.0 + 3j, 1.0, ConvergenceClass.CONDITIONAL_NOT_ABSOLUTE),
    (1.0, 1.0, ConvergenceClass.DIVERGENT),
    (0.5, 2.0, ConvergenceClass.DIVERGENT),
    (1.0, math.pi / 2, ConvergenceClass.OUTSIDE_THEOREM),
    (1.0, math.pi / 2 + 0.5 * HALF_PI_TOL, ConvergenceClass.OUTSIDE_THEOREM),
    (1.0, math.pi / 2 + 2 * HALF_PI_TOL, ConvergenceClass.DIVERGENT),
])
def test_classify(mu, theta, want):
    assert classify_convergence(DegreeOrder(0.3, mu), theta) is want


def test_classify_tags():
    assert ConvergenceClass.CONDITIONAL_HALF_PI.value == "Conditional(theta=pi/2)"
    assert ConvergenceClass.ABSOLUTE.value == "Absolute"


# ---------------------------------------------------------------- partial sums

@pytest.mark.parametrize("n", [0, 100])
@pytest.mark.parametrize("theta", [0.3, 1.0, math.pi / 2, 2.5])
def test_terminating_series(n, theta):
    res, trace = fourier_partial_sum(DegreeOrder(0, -0.5), theta, n)
    assert abs(res.value - closed_mu_minus_half(theta)) <= 1e-12
    assert res.rigorous
    assert len(trace) == n + 1


def test_p0_at_half_pi():
    p = DegreeOrder(0, 0)
    for n in (100, 1000, 10000):
        res, _ = fourier_partial_sum(p, math.pi / 2, n)
        # alternating tail: bounded by the first omitted term ~ 2/(pi n)
        assert abs(res.value - 1) <= 1.0 / n


def test_absolute_regime_n1e4():
    p = DegreeOrder(0.3, -1)
    ref = eval_theta(p, ThetaPoint(2.0)).value
    res, _ = fourier_partial_sum(p, 2.0, 10**4)
    assert abs(res.value - ref) <= 1e-6
    assert abs(res.value - ref) <= res.error_estimate


@pytest.mark.parametrize("nu, mu, theta", [(0.3, -1, 2.0), (0.3, -0.6, 1.0), (1.5 + 0.5j, -0.8, 0.4)])
def test_fourier_error_envelope(nu, mu, theta):
    # the error is oscillatory; its envelope over [n, 2n) decays like n^(2 Re mu)
    p = DegreeOrder(nu, mu)
    ref = eval_theorem1(p, CutPlanePoint(math.cos(theta))).value
    _, trace = fourier_partial_sum(p, theta, 2**14)
    err = np.abs(trace.partial_sum - ref)
    env = [err[n:2 * n].max() for n in (2**10, 2**11, 2**12)]
    bound = 1.5 * 2 ** (2 * p.mu.real)
    for e1, e2 in zip(env, env[1:]):
        assert e2 / e1 <= bound


def test_non_absolute_growth():
    p = DegreeOrder(0.3, 0.25)
    _, trace = fourier_partial_sum(p, 1.0, 2**14)
    a = trace.abs_partial_sum
    assert np.all(np.diff(a) >= 0)
    for j in range(8, 14):
        n = 2**j
        assert a[2 * n] - a[n] >= 0.05


def test_divergent_terms_grow():
    res, trace = fourier_partial_sum(DegreeOrder(0.3, 1.0), 1.0, 2000)
    assert math.isinf(res.error_estimate)
    assert np.abs(trace.term[1000:2001]).max() >= 1


def test_outside_theorem_trace_only():
    res, trace = fourier_partial_sum(DegreeOrder(0.3, 1.0), math.pi / 2, 50)
    assert len(trace) == 51 and math.isinf(res.error_estimate)


def test_series_trace_records():
    _, trace = fourier_partial_sum(DegreeOrder(0.3, 0.25), 1.0, 10)
    assert isinstance(trace, SeriesTrace)
    recs = list(trace)
    assert [r.k for r in recs] == list(range(11))
    assert recs[3].partial_sum == pytest.approx(sum(r.term for r in recs[:4]), rel=1e-14)


def test_accelerated_conditional():
    p = DegreeOrder(0.3, 0.25)
    ref = eval_theta(p, ThetaPoint(1.0)).value
    acc = accelerated_fourier_sum(p, 1.0)
    assert abs(acc.value - ref) <= 1e-5
    with pytest.raises(DomainError):
        accelerated_fourier_sum(DegreeOrder(0.3, 1.0), 1.0)


# ---------------------------------------------------------------- routing

@pytest.mark.parametrize("nu, mu, point, want", [
    (3, 0, CutPlanePoint(-0.2), 0.28),
    (0, 0, ThetaPoint(0.7), 1.0),
    # reference_ferrers_p(1.4, 0.3, 0.25+0.5i), 50 digits
    (1.4, 0.3, CutPlanePoint(0.25 + 0.5j), -0.64060997358333861245 + 0.54593866937937305515j),
    # reference_ferrers_p(0.3, -1, cos 2), 50 digits
    (0.3, -1, ThetaPoint(2.0), 1.2770174200078088106),
])
def test_ferrers_p_examples(nu, mu, point, want):
    r = ferrers_p(DegreeOrder(nu, mu), point)
    assert abs(r.value - want) <= 1e-11 * max(1, abs(want))


@pytest.mark.parametrize("nu, mu, x, method", [
    (0.3, -2.4, 0.2, Method.FOURIER_SERIES),
    (0.3, -1.0, 0.2, Method.CIRCLE_ACCELERATED),  # Fourier tail too slow for 1e-12
    (0.3, 0.25, 0.2, Method.CIRCLE_ACCELERATED),
    (0.3, 1.5, 0.2, None),
    (0.3, 1.5, 0.2 + 0.1j, None),
])
def test_ferrers_p_routes(nu, mu, x, method):
    p = DegreeOrder(nu, mu)
    r = ferrers_p(p, CutPlanePoint(x))
    if method is not None:
        assert r.method is method
    ref = eval_theorem1(p, CutPlanePoint(x)).value
    assert abs(r.value - ref) <= 1e-9 * max(1, abs(ref))


def test_legendre_grid():
    for n in range(6):
        for x in np.linspace(-0.95, 0.95, 21):
            r = ferrers_p(DegreeOrder(n, 0), CutPlanePoint(x))
            assert abs(r.value - legendre(n, x)) <= 1e-12
