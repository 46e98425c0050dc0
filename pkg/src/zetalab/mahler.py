"""Logarithmic Mahler measure of integer Laurent polynomials.

One variable: Jensen's formula ``m(P) = log|lead| + sum log max(1, |root|)``.
Cyclotomic factors are divided out exactly first (they contribute 0), the
remainder is made squarefree, and its roots come from companion-matrix
eigenvalues polished by Aberth-Ehrlich simultaneous iteration.

Several variables: midpoint rule on the torus, on a grid offset by half a step
from the rational points where structured zeros concentrate, with the grid
doubled until two successive estimates agree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from zetalab.errors import DomainError
from zetalab.polynomial import (
    LaurentPolynomialZ,
    delta_degree,
    squarefree_decomposition,
    strip_cyclotomic,
    strip_x,
)

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class MahlerResult:
    value: float
    method: str  # "jensen_exact" or "quadrature"
    err_bound: float
    cyclotomic_flag: bool
    converged: bool = True
    grid: int | None = None  # points per circle for quadrature

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "err_bound": self.err_bound,
            "cyclotomic_flag": self.cyclotomic_flag,
            "converged": self.converged,
            "grid": self.grid,
        }


def _aberth_roots(coeffs_asc: list[int], tol: float, max_iter: int = 100):
    """Roots of a squarefree integer polynomial with per-root error estimates."""
    desc = np.array([float(a) for a in reversed(coeffs_asc)])
    if not np.all(np.isfinite(desc)):
        raise DomainError("coefficients too large for double precision root finding")
    deg = len(desc) - 1
    if deg == 1:
        r = np.array([-desc[1] / desc[0]], dtype=complex)
        return r, np.abs(r) * EPS
    z = np.roots(desc).astype(complex)
    dcoef = np.polyder(desc)
    absd = np.abs(desc)
    for _ in range(max_iter):
        p = np.polyval(desc, z)
        dp = np.polyval(dcoef, z)
        ratio = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        w = ratio / (1.0 - ratio * s)
        z = z - w
        if np.max(np.abs(w)) <= max(tol, 1e-15) * 1e-2:
            break
    p = np.polyval(desc, z)
    dp = np.abs(np.polyval(dcoef, z))
    # rounding floor of the evaluation itself
    floor = 4 * deg * EPS * np.polyval(absd, np.abs(z))
    err = (np.abs(p) + floor) / np.maximum(dp, 1e-300)
    return z, err


def _univariate(coeffs: list[int], tol: float) -> MahlerResult:
    coeffs, _ = strip_x(coeffs)
    if not coeffs:
        raise DomainError("Mahler measure of the zero polynomial")
    lead = coeffs[-1]
    value = math.log(abs(lead))
    rest, _ = strip_cyclotomic(coeffs)
    if len(rest) == 1:
        return MahlerResult(value, "jensen_exact", 0.0, abs(lead) == 1)
    err = 0.0
    converged = True
    for factor, mult in squarefree_decomposition(rest):
        roots, root_err = _aberth_roots(factor, tol)
        # log max(1, r) is 1-Lipschitz in r; double the Newton estimate for safety
        value += mult * float(np.sum(np.log(np.maximum(1.0, np.abs(roots)))))
        bound = 2.0 * float(np.sum(root_err))
        err += mult * bound
        converged &= bound <= tol
    err += 4 * EPS * abs(value)
    return MahlerResult(float(value), "jensen_exact", float(err), False, converged)


def mahler_univariate(p: LaurentPolynomialZ, tol: float = 1e-12) -> MahlerResult:
    """Exact-route Mahler measure of a polynomial in (at most) one variable."""
    if p.is_zero():
        raise DomainError("Mahler measure of the zero polynomial")
    if len(p.active_variables()) > 1:
        raise DomainError("mahler_univariate needs a polynomial in one variable")
    return _univariate(p.univariate_coeffs(), tol)


def mahler_measure(p: LaurentPolynomialZ, tol: float = 1e-8, **quad_kw) -> MahlerResult:
    """Mahler measure by the best available route.

    Polynomials whose exponents lie on a line are ``x^u * Q(x^v)`` and have the
    measure of ``Q`` exactly; everything else goes through torus quadrature.
    """
    if p.is_zero():
        raise DomainError("Mahler measure of the zero polynomial")
    red = p.collinear_reduction()
    if red is not None:
        return _univariate(red[0], min(tol, 1e-12))
    return mahler_multivariate(p, tol=tol, **quad_kw)


def _effective_exponents(p: LaurentPolynomialZ):
    exps = np.array(list(p.terms), dtype=np.int64)
    coefs = np.array(list(p.terms.values()), dtype=float)
    varying = [i for i in range(p.nvars) if len(set(exps[:, i])) > 1]
    return exps[:, varying], coefs


def _torus_mean_log(exps: np.ndarray, coefs: np.ndarray, n: int, floor: float) -> float:
    k = exps.shape[1]
    theta = 2 * np.pi * (np.arange(n) + 0.5) / n
    if k == 0:
        return math.log(abs(coefs.sum()))
    shape = (n,) * k

    def evaluate(shift: float):
        total = np.zeros(shape, dtype=complex)
        for e, c in zip(exps, coefs):
            term = np.array(c, dtype=complex)
            for v in range(k):
                ph = np.exp(1j * e[v] * (theta + shift))
                term = np.multiply.outer(term, ph) if term.ndim else term * ph
            total = total + term.reshape(shape)
        return total

    vals = np.abs(evaluate(0.0))
    small = vals < floor
    if np.any(small):
        # log|P| is integrable across torus zeros; nudge the few samples that hit one
        nudged = np.abs(evaluate(np.pi / (2 * n)))
        vals = np.where(small, np.maximum(nudged, floor), vals)
    return float(np.mean(np.log(vals)))


def mahler_multivariate(
    p: LaurentPolynomialZ,
    tol: float = 1e-6,
    start: int = 16,
    max_points: int = 2**22,
    floor: float = 1e-14,
) -> MahlerResult:
    """Torus quadrature of ``log|P|`` with grid doubling until successive estimates differ by < tol.

    The result carries ``converged=False`` when the point cap stops the doubling;
    ``err_bound`` is always the last difference between resolutions.
    """
    if p.is_zero():
        raise DomainError("Mahler measure of the zero polynomial")
    exps, coefs = _effective_exponents(p)
    k = exps.shape[1]
    scale = float(np.sum(np.abs(coefs)))
    red = p.collinear_reduction()
    cyc = False
    if red is not None:
        q, _ = strip_x(red[0])
        rest, _ = strip_cyclotomic(q)
        cyc = len(rest) == 1 and abs(rest[0]) == 1
    n = start
    prev = _torus_mean_log(exps, coefs, n, floor * scale)
    delta = math.inf
    while (2 * n) ** max(k, 1) <= max_points:
        n *= 2
        cur = _torus_mean_log(exps, coefs, n, floor * scale)
        # identical grids give a zero difference; keep the summation rounding as a floor
        delta = max(abs(cur - prev), EPS * math.sqrt(float(n) ** k) * max(1.0, abs(cur)))
        prev = cur
        if delta < tol:
            return MahlerResult(prev, "quadrature", float(delta), cyc and abs(prev) <= max(delta, tol), True, n)
    return MahlerResult(prev, "quadrature", float(delta), False, delta < tol, n)


def mahler_coefficient_bound(p: LaurentPolynomialZ) -> float:
    """Mahler's lower bound ``2^(-sum_i deg_i) * sum |a_j|`` for ``exp(m(P))``."""
    if p.is_zero():
        raise DomainError("coefficient bound of the zero polynomial")
    q = p.cleared()
    return 2.0 ** (-sum(q.degrees())) * sum(abs(c) for c in q.coefficients())


def is_cyclotomic_product(p: LaurentPolynomialZ) -> bool:
    """True iff ``p`` is +-monomial times cyclotomic polynomials evaluated at one monomial."""
    red = p.collinear_reduction()
    if red is None:
        return False
    q, _ = strip_x(red[0])
    rest, _ = strip_cyclotomic(q)
    return len(rest) == 1 and abs(rest[0]) == 1


# ---------------------------------------------------------------------------
# bounded enumeration


def _profiles(delta_max: int, nvars: int | None):
    nv = delta_max if nvars is None else min(nvars, delta_max)
    nv = max(nv, 1)
    ranges = [range(delta_max // (i + 1) + 1) for i in range(nv)]
    for degs in itertools.product(*ranges):
        if sum((i + 1) * d for i, d in enumerate(degs)) <= delta_max:
            yield degs


def _l1_vectors(length: int, budget: int, reverse: bool):
    """Integer vectors of the given length with L1 norm <= budget."""
    vals = list(range(-budget, budget + 1))
    if reverse:
        vals.reverse()

    def rec(prefix, left):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for v in vals:
            if abs(v) <= left:
                prefix.append(v)
                yield from rec(prefix, left - abs(v))
                prefix.pop()

    yield from rec([], budget)


def enumerate_bounded(
    m_max: float,
    delta_max: int,
    nvars: int | None = None,
    tol: float = 1e-9,
    cap: int = 500_000,
    order: str = "lex",
) -> list[LaurentPolynomialZ]:
    """All integer polynomials (cleared forms) with ``delta <= delta_max`` and ``m <= m_max``.

    Candidates are restricted by Mahler's inequality
    ``sum |a_j| <= 2^(sum deg) * exp(m_max)``, so the list is complete.
    ``order`` ("lex" or "reverse") only changes the search order.
    """
    if delta_max < 0:
        raise DomainError("delta_max must be non-negative")
    if not math.isfinite(m_max):
        raise DomainError("m_max must be finite")
    reverse = order == "reverse"
    found = set()
    visited = 0
    profiles = list(_profiles(delta_max, nvars))
    if reverse:
        profiles.reverse()
    for degs in profiles:
        active = [i for i, d in enumerate(degs) if d]
        nv = max(active) + 1 if active else 1
        monos = list(itertools.product(*(range(degs[i] + 1) for i in range(nv))))
        budget = int(math.floor(2.0 ** sum(degs) * math.exp(m_max) + 1e-9))
        for vec in _l1_vectors(len(monos), budget, reverse):
            visited += 1
            if visited > cap:
                raise DomainError(f"enumeration exceeds the cap of {cap} candidates; lower delta_max or m_max")
            terms = {m: c for m, c in zip(monos, vec) if c}
            if not terms:
                continue
            # the profile fixes every partial degree exactly
            if any(max(m[i] for m in terms) != degs[i] for i in range(nv)):
                continue
            p = LaurentPolynomialZ(nv, terms)
            if mahler_measure(p, tol=tol).value <= m_max + tol:
                found.add(p)
    return sorted(found, key=lambda q: (delta_degree(q), q.nvars, str(q)))
