"""Absolute logarithmic Weil height from minimal polynomials.

``h(alpha) = m(f) / deg f`` for the primitive irreducible integer polynomial
``f`` of ``alpha``. Irreducibility is certified without a factorisation
library: a rational-root test handles degrees 2 and 3, Eisenstein's criterion
settles some inputs outright, and otherwise every candidate factor of degree
``k <= deg/2`` is searched inside the box ``|g_j| <= C(k, j) M(f)``, which
holds since ``M(g) <= M(f)`` for any factor ``g``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from zetalab.errors import ContractViolation, DomainError
from zetalab.mahler import MahlerResult, mahler_univariate
from zetalab.nfdata import NumberFieldRecord, fundamental_unit
from zetalab.polynomial import LaurentPolynomialZ, content, exact_div, is_reciprocal, trim

FACTOR_SEARCH_CAP = 2_000_000


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _primes_dividing(n: int) -> list[int]:
    n, out, p = abs(n), [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _eisenstein(f: tuple[int, ...]) -> bool:
    a0, lead = f[0], f[-1]
    if a0 == 0:
        return False
    for p in _primes_dividing(math.gcd(*f[:-1])):
        if lead % p and a0 % (p * p):
            return True
    return False


def _eval_frac(f, p: int, q: int) -> int:
    # q^deg * f(p/q)
    d = len(f) - 1
    return sum(c * p**i * q ** (d - i) for i, c in enumerate(f))


def has_rational_root(f: tuple[int, ...]) -> bool:
    if f[0] == 0:
        return True
    for p in _divisors(f[0]):
        for q in _divisors(f[-1]):
            if math.gcd(p, q) == 1 and (_eval_frac(f, p, q) == 0 or _eval_frac(f, -p, q) == 0):
                return True
    return False


def _factor_search(f: tuple[int, ...], k: int, mbound: float) -> bool:
    """True when ``f`` has an integer factor of degree ``k``."""
    lead_divs = _divisors(f[-1])
    const_divs = _divisors(f[0])
    mids = [range(-int(math.comb(k, j) * mbound), int(math.comb(k, j) * mbound) + 1) for j in range(1, k)]
    size = len(lead_divs) * 2 * len(const_divs) * math.prod(len(r) for r in mids)
    if size > FACTOR_SEARCH_CAP:
        raise DomainError(f"irreducibility of {list(f)} cannot be certified within the search cap")
    for lead in lead_divs:
        for c0 in const_divs:
            for sign in (1, -1):
                for mid in itertools.product(*mids):
                    g = (sign * c0, *mid, lead)
                    if exact_div(f, g) is not None:
                        return True
    return False


def is_irreducible(f) -> bool:
    """Certified irreducibility over Q for a primitive integer polynomial (ascending coefficients)."""
    f = tuple(trim(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    if _eisenstein(f):
        return True
    if has_rational_root(f):
        return False
    if d <= 3:
        return True
    m = mahler_univariate(LaurentPolynomialZ.from_coeffs(f))
    mbound = math.exp(m.value + m.err_bound) * (1 + 1e-9)
    return not any(_factor_search(f, k, mbound) for k in range(2, d // 2 + 1))


def normalize_min_poly(coeffs) -> tuple[int, ...]:
    f = trim(int(c) for c in coeffs)
    if len(f) < 2:
        raise ContractViolation("a minimal polynomial has degree at least 1")
    g = content(f)
    f = [c // g for c in f]
    if f[-1] < 0:
        f = [-c for c in f]
    return tuple(f)


@dataclass(frozen=True)
class AlgebraicNumber:
    """An algebraic number, represented by its primitive minimal polynomial (ascending coefficients)."""

    min_poly: tuple[int, ...]

    def __post_init__(self):
        f = self.min_poly
        if len(f) < 2 or f[-1] <= 0 or content(list(f)) != 1:
            raise ContractViolation("min_poly must be primitive with positive leading coefficient")
        if not is_irreducible(f):
            raise ContractViolation(f"{list(f)} is reducible over Q")

    @classmethod
    def from_poly(cls, coeffs) -> "AlgebraicNumber":
        return cls(normalize_min_poly(coeffs))

    @classmethod
    def parse(cls, text: str) -> "AlgebraicNumber":
        p = LaurentPolynomialZ.parse(text)
        if len(p.active_variables()) > 1:
            raise DomainError("a minimal polynomial has one variable")
        return cls.from_poly(p.univariate_coeffs())

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def __str__(self) -> str:
        return str(LaurentPolynomialZ.from_coeffs(self.min_poly))


@dataclass(frozen=True)
class HeightValue:
    value: float
    err_bound: float
    mahler: MahlerResult


def weil_height(a: AlgebraicNumber, tol: float = 1e-12) -> HeightValue:
    m = mahler_univariate(LaurentPolynomialZ.from_coeffs(a.min_poly), tol)
    return HeightValue(m.value / a.degree, m.err_bound / a.degree, m)


def _box(d: int, mbound: float):
    """Per-coefficient ranges ``|a_j| <= C(d, j) M`` with ``a_d >= 1``, ``a_0 != 0``."""
    ranges = []
    for j in range(d + 1):
        b = int(math.floor(math.comb(d, j) * mbound + 1e-9))
        if j == d:
            ranges.append(np.arange(1, b + 1))
        elif j == 0:
            ranges.append(np.array([v for v in range(-b, b + 1) if v]))
        else:
            ranges.append(np.arange(-b, b + 1))
    return ranges


def _measure_prefilter(coeffs: np.ndarray) -> np.ndarray:
    """Approximate Mahler measures (exp m) of many polynomials at once via companion eigenvalues."""
    d = coeffs.shape[1] - 1
    lead = coeffs[:, -1].astype(float)
    comp = np.zeros((len(coeffs), d, d))
    comp[:, 0, :] = -coeffs[:, -2::-1] / lead[:, None]
    if d > 1:
        comp[:, np.arange(1, d), np.arange(d - 1)] = 1.0
    roots = np.linalg.eigvals(comp)
    return np.abs(lead) * np.prod(np.maximum(1.0, np.abs(roots)), axis=1)


def enumerate_heights(
    h_max: float,
    d_max: int,
    tol: float = 1e-9,
    cap: int = 5_000_000,
) -> list[AlgebraicNumber]:
    """All nonzero algebraic numbers of degree ``<= d_max`` with ``h <= h_max``.

    Candidates are primitive integer polynomials with ``a_d > 0``, ``a_0 != 0``
    and ``|a_j| <= C(d, j) exp(d h_max)``, which contains every minimal
    polynomial of measure at most ``exp(d h_max)``.
    """
    if d_max < 1:
        raise DomainError("d_max must be at least 1")
    if not math.isfinite(h_max) or h_max < 0:
        raise DomainError("h_max must be finite and non-negative")
    out = []
    for d in range(1, d_max + 1):
        mbound = math.exp(d * h_max)
        ranges = _box(d, mbound)
        size = math.prod(len(r) for r in ranges)
        if size > cap:
            raise DomainError(f"degree {d} box has {size} candidates, above the cap of {cap}")
        grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, d + 1)
        grid = grid[np.gcd.reduce(grid, axis=1) == 1]
        approx = _measure_prefilter(grid)
        keep = grid[approx <= mbound * (1 + 1e-6) + 1e-9]
        for row in keep:
            f = tuple(int(c) for c in row)
            if not is_irreducible(f):
                continue
            a = AlgebraicNumber(f)
            if weil_height(a).value <= h_max + tol:
                out.append(a)
    return sorted(out, key=lambda a: (a.degree, a.min_poly))


def smyth_theta0() -> float:
    """Real root of ``x^3 - x - 1`` by bisection on [1, 2]."""
    lo, hi = 1.0, 2.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            return lo
        if mid**3 - mid - 1 < 0:
            lo = mid
        else:
            hi = mid


def smyth_violations(numbers, tol: float = 1e-12) -> list[AlgebraicNumber]:
    """Non-reciprocal elements with ``d h(alpha) < log theta0`` (expected: none)."""
    bound = math.log(smyth_theta0())
    bad = []
    for a in numbers:
        if is_reciprocal(list(a.min_poly)):
            continue
        hv = weil_height(a)
        if a.degree * hv.value < bound - tol - a.degree * hv.err_bound:
            bad.append(a)
    return bad


@dataclass(frozen=True)
class SandwichReport:
    label: str
    unit: str
    unit_height: float
    zeta0: float
    lower: float
    upper: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.lower - self.tol <= self.zeta0 <= self.upper + self.tol and abs(self.upper - self.lower) <= self.tol

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "unit": self.unit,
            "unit_height": self.unit_height,
            "zeta0": self.zeta0,
            "lower": self.lower,
            "upper": self.upper,
            "ok": self.ok,
        }


def akhtari_vaaler_check(F: NumberFieldRecord, tol: float = 1e-12) -> SandwichReport:
    """Both sides of the Akhtari-Vaaler sandwich at unit rank 1.

    For a real quadratic field the basis is the fundamental unit ``eps``; its
    conjugate has modulus ``1/eps``, so ``h(eps) = log(eps)/2 = R/2`` and both
    sides collapse to ``h R / w = |zeta*(0)|``. The unit height is computed
    from the minimal polynomial, independently of the stored regulator.
    """
    if not (F.degree == 2 and F.r1 == 2):
        raise DomainError("akhtari_vaaler_check needs a real quadratic field")
    unit = F.unit if F.unit is not None else fundamental_unit(F.disc)
    gamma = AlgebraicNumber.from_poly(unit.min_poly())
    hg = weil_height(gamma).value
    r, d = 1, F.degree
    zeta0 = F.h * F.reg / F.w
    lower = F.h * d**r * math.factorial(2 * r) / (2 * F.w * math.factorial(r) ** 4) * hg
    upper = F.h * d**r / F.w * hg
    return SandwichReport(F.label, str(gamma), hg, zeta0, lower, upper, tol)
