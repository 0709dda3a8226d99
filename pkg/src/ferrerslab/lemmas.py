"""Numerical companions to the two trigonometric lemmas behind the
convergence theorem.

* ``sum_k |sin((a + 2k) theta)| / k`` diverges except in the degenerate
  case theta = pi/2 with sin(a pi/2) = 0, where every term vanishes;
* ``sum_k cos(2(a + 2k) theta)`` has partial sums bounded by
  1/|sin 2 theta| (Dirichlet test);
* ``sin(a + b n)`` does not tend to 0 when sin b != 0.

At theta = pi/2 (within HALF_PI_TOL) the phases are reduced exactly:
(a + 2k) pi/2 = a pi/2 + k pi, so |sin| is constant in k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HalfPiError
from .ferrers import HALF_PI_TOL

_CHUNK = 1 << 16


@dataclass(frozen=True)
class LemmaTrace:
    n: int
    value: float | complex
    running_sum: float


def _is_half_pi(theta: float) -> bool:
    return abs(theta - 0.5 * math.pi) <= HALF_PI_TOL


def _check_theta(theta: float):
    if not 0.0 < theta < math.pi:
        raise DomainError(f"theta = {theta} is outside (0, pi)")


def _abs_sin_half_pi(a: complex) -> float:
    """|sin(a pi/2)|, exactly 0 for even integers a."""
    if a.imag == 0 and a.real % 2 == 0:
        return 0.0
    return abs(np.sin(complex(a) * 0.5 * math.pi))


def lemma3_terms(a, theta: float, n: int) -> np.ndarray:
    """|sin((a + 2k) theta)| / k for k = 1..n."""
    a = complex(a)
    theta = float(theta)
    _check_theta(theta)
    k = np.arange(1, n + 1, dtype=float)
    if _is_half_pi(theta):
        return _abs_sin_half_pi(a) / k
    if a.imag == 0:
        return np.abs(np.sin((a.real + 2.0 * k) * theta)) / k
    return np.abs(np.sin((a + 2.0 * k) * theta)) / k


def lemma3_partial_sum(a, theta: float, n: int) -> float:
    """sum_{k=1}^n |sin((a + 2k) theta)| / k (complex sine modulus for complex a)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.fsum(lemma3_terms(a, theta, n))


def lemma3_square_partial_sum(a: float, theta: float, n: int) -> float:
    """sum_{k=1}^n sin^2((a + 2k) theta) / k, the minorant used in the proof."""
    _check_theta(theta)
    k = np.arange(1, n + 1, dtype=float)
    return math.fsum(np.sin((float(a) + 2.0 * k) * theta) ** 2 / k)


def lemma3_trace(a, theta: float, n: int) -> list[LemmaTrace]:
    terms = lemma3_terms(a, theta, n)
    running = np.cumsum(terms)
    return [LemmaTrace(i + 1, float(t), float(s)) for i, (t, s) in enumerate(zip(terms, running))]


def dirichlet_bound(theta: float) -> float:
    """1/|sin 2 theta| + 1."""
    return 1.0 / abs(math.sin(2.0 * theta)) + 1.0


def dirichlet_cosine_sums(a: float, theta: float, n: int) -> np.ndarray:
    """Running sums sum_{k=1}^m cos(2(a + 2k) theta), m = 1..n."""
    theta = float(theta)
    _check_theta(theta)
    if _is_half_pi(theta):
        raise HalfPiError("the Dirichlet bound degenerates at theta = pi/2")
    k = np.arange(1, n + 1, dtype=float)
    return np.cumsum(np.cos(2.0 * (float(a) + 2.0 * k) * theta))


def dirichlet_cosine_sum(a: float, theta: float, n: int) -> float:
    """sum_{k=1}^n cos(2(a + 2k) theta); bounded by 1/|sin 2 theta| + 1."""
    theta = float(theta)
    _check_theta(theta)
    if _is_half_pi(theta):
        raise HalfPiError("the Dirichlet bound degenerates at theta = pi/2")
    if n <= 0:
        return 0.0
    total = 0.0
    for lo in range(1, n + 1, _CHUNK):
        k = np.arange(lo, min(n, lo + _CHUNK - 1) + 1, dtype=float)
        total += math.fsum(np.cos(2.0 * (float(a) + 2.0 * k) * theta))
    return total


def _sin_b_vanishes(b: complex) -> int | None:
    """m if b = m pi (real, within 1e-12 relative), else None."""
    if b.imag != 0:
        return None
    m = round(b.real / math.pi)
    if abs(b.real - m * math.pi) <= 1e-12 * max(1.0, abs(b.real)):
        return m
    return None


def lemma4_values(a, b, N: int, window: int) -> np.ndarray:
    """|sin(a + b n)| for n = N..N+window.

    When b is a multiple of pi, sin(a + b n) = +-sin(a) for every n and the
    common modulus is returned without rounding noise.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    a, b = complex(a), complex(b)
    n = np.arange(N, N + window + 1, dtype=float)
    if _sin_b_vanishes(b) is not None:
        return np.full(n.shape, 0.0 if a == 0 else abs(np.sin(a)))
    if a.imag == 0 and b.imag == 0:
        return np.abs(np.sin(a.real + b.real * n))
    return np.abs(np.sin(a + b * n))


def lemma4_tail_stat(a, b, N: int, window: int) -> float:
    """max_{n in [N, N+window]} |sin(a + b n)|."""
    return float(np.max(lemma4_values(a, b, N, window)))


def lemma4_trace(a, b, N: int, window: int) -> list[LemmaTrace]:
    vals = lemma4_values(a, b, N, window)
    running = np.maximum.accumulate(vals)
    return [LemmaTrace(N + i, float(v), float(r)) for i, (v, r) in enumerate(zip(vals, running))]
