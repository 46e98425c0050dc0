"""Euler-Maclaurin evaluation of Hurwitz zeta and real quadratic L-series for s > 1.

    zeta(s, a) = sum_{k<N} (k+a)^-s + (N+a)^(1-s)/(s-1) + (N+a)^-s / 2
                 + sum_{j=1}^{p} B_2j/(2j)! * s(s+1)...(s+2j-2) * (N+a)^(-s-2j+1) + R

For ``f(x) = x^-s`` every derivative has constant sign and decreasing modulus
on ``[N+a, oo)``, so ``|R|`` is below the first omitted correction term; the
reported bound is twice that term. ``N`` is chosen so the bound meets the
requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from zetalab.errors import DomainError

ORDER = 8  # number of Bernoulli correction terms


def _bernoulli(n: int) -> list[Fraction]:
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        b[m] = -sum(math.comb(m + 1, k) * b[k] for k in range(m)) / (m + 1)
    return b


_B = _bernoulli(2 * ORDER + 2)
# B_2j / (2j)! for j = 1..ORDER+1
_COEF = [float(_B[2 * j] / math.factorial(2 * j)) for j in range(1, ORDER + 2)]


def _rising(s: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= s + i
    return out


def _tail_term(s: float, x: float, j: int) -> float:
    """|j-th correction term| at abscissa x."""
    return abs(_COEF[j - 1]) * abs(_rising(s, 2 * j - 1)) * x ** (-s - 2 * j + 1)


def terms_needed(s: float, amin: float, tol: float) -> int:
    """Smallest N with 2 * |first omitted term| <= tol for every shift a >= amin."""
    n = 1
    while 2 * _tail_term(s, n + amin, ORDER + 1) > tol:
        n *= 2
    lo, hi = n // 2, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if 2 * _tail_term(s, mid + amin, ORDER + 1) > tol:
            lo = mid
        else:
            hi = mid
    return max(hi, 1)


@dataclass(frozen=True)
class SeriesValue:
    value: float
    err_bound: float


def hurwitz_zeta(s: float, a, tol: float = 1e-14) -> tuple[np.ndarray, float]:
    """Hurwitz zeta at real ``s > 1`` for an array of shifts ``0 < a <= 1``.

    Returns (values, per-value error bound).
    """
    if not s > 1:
        raise DomainError("Euler-Maclaurin series evaluation needs s > 1")
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if np.any(a <= 0):
        raise DomainError("Hurwitz shift must be positive")
    n = terms_needed(s, float(a.min()), tol)
    k = np.arange(n, dtype=float)
    head = np.sum((k[None, :] + a[:, None]) ** (-s), axis=1)
    x = n + a
    tail = x ** (1 - s) / (s - 1) + 0.5 * x ** (-s)
    for j in range(1, ORDER + 1):
        tail = tail + _COEF[j - 1] * _rising(s, 2 * j - 1) * x ** (-s - 2 * j + 1)
    err = 2 * _tail_term(s, n + float(a.min()), ORDER + 1)
    vals = head + tail
    err += 4 * np.finfo(float).eps * float(np.max(np.abs(vals))) * math.sqrt(n)
    return vals, float(err)


def riemann_zeta(s: float, tol: float = 1e-14) -> SeriesValue:
    vals, err = hurwitz_zeta(s, [1.0], tol)
    return SeriesValue(float(vals[0]), err)


def dirichlet_l(s: float, chi: np.ndarray, tol: float = 1e-14) -> SeriesValue:
    """``L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q)`` for a character table of period q."""
    q = len(chi)
    a = np.nonzero(chi)[0]
    # absolute error of the sum is at most q^-s * (#terms) * per-term error
    per_term = tol * q**s / max(len(a), 1)
    vals, err = hurwitz_zeta(s, a / q, per_term)
    total = float(np.sum(chi[a] * vals)) * q ** (-s)
    bound = err * len(a) * q ** (-s)
    # the pole terms cancel in the character sum; account for that cancellation
    bound += 4 * np.finfo(float).eps * float(np.sum(np.abs(vals))) * q ** (-s)
    return SeriesValue(total, float(bound))
