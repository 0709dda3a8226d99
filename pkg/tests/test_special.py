import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ferrerslab.errors import BranchCutError, DomainError, PoleError
from ferrerslab.special import (
    TRIVIAL_ZERO,
    gamma,
    gamma_ratio,
    log_gamma,
    log_gamma_difference,
    log_pochhammer,
    pochhammer,
    principal_power,
    principal_sqrt_one_minus_sq,
    rgamma,
)

# mpmath.loggamma(1+1j) at 40 digits
LOG_GAMMA_1_PLUS_I = complex(-0.6509231993018563388852168315039476650655,
                             -0.3016403204675331978875316577968965406599)


def _grid(n=1000, radius=30.0, seed=7):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        z = complex(*rng.uniform(-radius, radius, 2))
        if abs(z) > radius:
            continue
        # stay away from the poles of Gamma(z) and Gamma(1 - z)
        if z.real < 1.5 and abs(z.imag) < 0.1 and abs(z.real - round(z.real)) < 0.1:
            continue
        pts.append(z)
    return pts


GRID = _grid()


@pytest.mark.parametrize("z, log_mod", [(5, math.log(24.0)), (0.5, 0.5723649429247001)])
def test_log_gamma_real(z, log_mod):
    lg = log_gamma(z)
    assert lg.log_modulus == pytest.approx(log_mod, rel=1e-15)
    assert lg.phase == 0.0


def test_log_gamma_one_plus_i():
    assert abs(log_gamma(1 + 1j).value - LOG_GAMMA_1_PLUS_I) <= 2e-14


@pytest.mark.parametrize("z", [0, -1, -7, -1e-20])
def test_log_gamma_poles(z):
    with pytest.raises(PoleError):
        log_gamma(z)
    assert rgamma(z) is TRIVIAL_ZERO


@pytest.mark.parametrize("z", [float("nan"), complex(1, float("inf"))])
def test_non_finite_rejected(z):
    with pytest.raises(DomainError):
        log_gamma(z)


def test_recurrence_grid():
    worst = 0.0
    for z in GRID:
        if abs(z) < 1e-8:
            continue
        lg0 = log_gamma(z).value
        lg1 = log_gamma(z + 1).value
        err = abs(lg1 - lg0 - cmath.log(z)) / (1 + abs(lg0))
        worst = max(worst, err)
    assert worst <= 1e-13


def test_reflection_grid():
    worst = 0.0
    for z in GRID:
        if abs(z.imag) > 10:  # sin(pi z) overflows the product beyond this
            continue
        prod = cmath.exp(log_gamma(z).value + log_gamma(1 - z).value) * cmath.sin(math.pi * z)
        worst = max(worst, abs(prod - math.pi) / math.pi)
    assert worst <= 1e-12


def test_gamma_small_integers():
    for n in range(1, 15):
        assert gamma(n) == pytest.approx(math.factorial(n - 1), rel=1e-14)


@pytest.mark.parametrize("a, b, k, want", [
    (5, 3, 0, 12.0),
    (0.7 + 0.2j, 0.7 + 0.2j, 9, 1.0),
    (1, 1, 0, 1.0),
    (-3, -1, 0, 1.0 / 6.0),  # limit Gamma(-3+e)/Gamma(-1+e) = (-1)^2 1!/3!
])
def test_gamma_ratio_examples(a, b, k, want):
    assert gamma_ratio(a, b, k) == pytest.approx(want, rel=1e-14)


def test_gamma_ratio_poles():
    assert gamma_ratio(1.5, -2) is TRIVIAL_ZERO
    with pytest.raises(PoleError):
        gamma_ratio(-2, 1.5)


def test_gamma_ratio_large_k():
    k = 10**6
    assert gamma_ratio(0.3, 1.1, k) == pytest.approx(k ** (0.3 - 1.1), rel=1e-6)


@pytest.mark.parametrize("k", [10**4, 3 * 10**4, 10**5])
@pytest.mark.parametrize("a, b", [(0.3, 1.1), (1.2 + 0.5j, 0.8 - 0.1j), (-0.4, 2.5)])
def test_gamma_ratio_paths_agree(a, b, k):
    direct = gamma_ratio(a, b, k, path="direct")
    asym = gamma_ratio(a, b, k, path="asymptotic")
    assert abs(direct - asym) <= 1e-13 * abs(direct)


finite = st.floats(-8, 8, allow_nan=False)


@given(finite, finite, finite, finite, st.integers(0, 200))
def test_gamma_ratio_inverse(ar, ai, br, bi, k):
    a, b = complex(ar, ai + 0.05), complex(br, bi - 0.05)
    r = gamma_ratio(a, b, k) * gamma_ratio(b, a, k)
    assert abs(r - 1) <= 1e-13


@pytest.mark.parametrize("a, k, want", [(0.3 + 1j, 0, 1.0), (0.5, 3, 15 / 8), (-2, 3, 0.0), (-2, 2, 2.0)])
def test_pochhammer_examples(a, k, want):
    assert pochhammer(a, k) == pytest.approx(want, rel=1e-15, abs=0)


@given(finite, st.floats(0.1, 5), st.integers(0, 60))
def test_pochhammer_vs_log_gamma(ar, ai, k):
    a = complex(ar, ai)
    want = cmath.exp(log_gamma(a + k).value - log_gamma(a).value)
    assert abs(pochhammer(a, k) - want) <= 1e-12 * abs(want)
    assert abs(cmath.exp(log_pochhammer(a, k)) - want) <= 1e-12 * abs(want)


def test_log_gamma_difference_large():
    # Gamma(10^6 + 0.3) / Gamma(10^6 + 1.1), mpmath at 30 digits
    x, y = 1e6 + 0.3, 1e6 + 1.1
    assert cmath.exp(log_gamma_difference(x, y, -0.8)) == pytest.approx(1.58489293887822931763e-05, rel=1e-9)


@pytest.mark.parametrize("x, want", [(0, 1.0), (0.6, 0.8), (2j, math.sqrt(5.0))])
def test_sqrt_one_minus_sq(x, want):
    assert principal_sqrt_one_minus_sq(x) == pytest.approx(want, rel=1e-15)


@pytest.mark.parametrize("x", [1, -1, 1.5, -3, 2 + 1e-13j])
def test_sqrt_on_cut(x):
    with pytest.raises(BranchCutError):
        principal_sqrt_one_minus_sq(x)


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_uv_identities(xr, xi):
    x = complex(xr, xi)
    if abs(x.imag) < 1e-3 and abs(x.real) >= 0.999:
        return
    r = principal_sqrt_one_minus_sq(x)
    u, v = x + 1j * r, x - 1j * r
    assert abs(u * v - 1) <= 1e-14 * max(1, abs(u), abs(v)) ** 2
    assert abs(u + v - 2 * x) <= 1e-14 * max(1, abs(u), abs(v))


@given(st.floats(1e-3, math.pi - 1e-3))
def test_u_on_unit_circle(theta):
    x = math.cos(theta)
    u = x + 1j * principal_sqrt_one_minus_sq(x)
    assert abs(abs(u) - 1) <= 1e-14


@pytest.mark.parametrize("z, alpha, want", [(4, 0.5, 2.0), (-1, 0.5, 1j), (0, 2, 0.0)])
def test_principal_power(z, alpha, want):
    assert principal_power(z, alpha) == pytest.approx(want, abs=1e-16)


def test_principal_power_derived():
    # exp(1.5 Log z) with z = e^{i pi/3} rounded to double; mpmath at 40 digits
    z = cmath.exp(1j * math.pi / 3)
    want = complex(3.763156583177588413e-17, 0.9999999999999999348202160109912093831942)
    assert abs(principal_power(z, 0.3 + 0.2 + 1) - want) <= 1e-15


def test_principal_power_zero_base():
    with pytest.raises(DomainError):
        principal_power(0, -0.5)
