"""Integer Laurent polynomials and exact univariate integer-polynomial arithmetic.

Univariate helpers work on coefficient lists in *ascending* degree order
(``[a0, a1, ..., ad]``) with Python ints, so every division and gcd is exact.

Text format: a sum of terms ``c*x1^e1*...*xn^en`` with integer ``c`` and
``e``. ``x``, ``y``, ``z`` are accepted as aliases of ``x1``, ``x2``, ``x3``
and ``/x2`` as ``x2^-1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from zetalab.errors import ContractViolation, DomainError

Coeffs = list  # ascending integer coefficients


# ---------------------------------------------------------------------------
# univariate integer polynomials


def trim(p: Iterable[int]) -> Coeffs:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Coeffs) -> int:
    p = trim(p)
    return len(p) - 1 if p else -1


def content(p: Coeffs) -> int:
    g = 0
    for a in p:
        g = math.gcd(g, a)
    return g


def primitive_part(p: Coeffs) -> Coeffs:
    p = trim(p)
    if not p:
        return []
    g = content(p)
    if p[-1] < 0:
        g = -g
    return [a // g for a in p]


def poly_mul(p: Coeffs, q: Coeffs) -> Coeffs:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def exact_div(p: Coeffs, q: Coeffs) -> Coeffs | None:
    """``p / q`` when ``q`` divides ``p`` in Z[x], otherwise ``None``."""
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return []
    dq = len(q) - 1
    rem = list(p)
    quot = [0] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        top = rem[k + dq]
        if top % q[-1]:
            return None
        c = top // q[-1]
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    if any(rem):
        return None
    return trim(quot)


def pseudo_rem(p: Coeffs, q: Coeffs) -> Coeffs:
    p, q = trim(p), trim(q)
    dq = len(q) - 1
    r = list(p)
    while len(r) - 1 >= dq and r:
        lead = r[-1]
        shift = len(r) - 1 - dq
        r = [a * q[-1] for a in r]
        for j, b in enumerate(q):
            r[shift + j] -= lead * b
        r = trim(r)
    return r


def poly_gcd(p: Coeffs, q: Coeffs) -> Coeffs:
    """Primitive gcd over Q[x] (positive leading coefficient)."""
    a, b = primitive_part(p), primitive_part(q)
    while b:
        a, b = b, primitive_part(pseudo_rem(a, b))
    return primitive_part(a) if a else []


def derivative(p: Coeffs) -> Coeffs:
    return trim([i * a for i, a in enumerate(p)][1:])


def squarefree_decomposition(p: Coeffs) -> list[tuple[Coeffs, int]]:
    """Yun's algorithm on the primitive part: ``p ~ prod f_i^i``, ``f_i`` squarefree."""
    f = primitive_part(p)
    if degree(f) <= 0:
        return []
    out = []
    a = poly_gcd(f, derivative(f))
    b = exact_div(f, a)
    c = exact_div(derivative(f), a) if degree(a) > 0 else derivative(f)
    if degree(a) <= 0:
        return [(f, 1)]
    d = _sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = poly_gcd(b, d) if d else primitive_part(b)
        if degree(a) > 0:
            out.append((a, i))
        b_new = exact_div(b, a)
        c = _div_rational(d, a)
        b = b_new
        d = _sub(c, derivative(b))
        i += 1
    return out


def _sub(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def _div_rational(p, q):
    # Yun's intermediate quotients are exact in Q[x]; scale through the content
    if not trim(p):
        return []
    res = exact_div(p, q)
    if res is not None:
        return res
    lead = q[-1]
    k = 1
    while True:
        res = exact_div([a * lead**k for a in p], q)
        if res is not None:
            return primitive_part(res)
        k += 1


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial (ascending)."""
    if d < 1:
        raise DomainError("cyclotomic index must be positive")
    p = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            p = exact_div(p, list(cyclotomic(e)))
    return tuple(p)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_indices_up_to_degree(deg: int) -> list[int]:
    # phi(d) >= sqrt(d/2), so d <= 2 deg^2 covers every phi(d) <= deg
    return [d for d in range(1, 2 * deg * deg + 3) if euler_phi(d) <= deg]


def strip_cyclotomic(p: Coeffs) -> tuple[Coeffs, list[tuple[int, int]]]:
    """Divide out every cyclotomic factor exactly; return the cofactor and (d, multiplicity)."""
    p = trim(p)
    found = []
    for d in cyclotomic_indices_up_to_degree(max(degree(p), 1)):
        phi = list(cyclotomic(d))
        mult = 0
        while degree(p) >= len(phi) - 1:
            q = exact_div(p, phi)
            if q is None:
                break
            p, mult = q, mult + 1
        if mult:
            found.append((d, mult))
    return p, found


def strip_x(p: Coeffs) -> tuple[Coeffs, int]:
    p = trim(p)
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return p[k:], k


def is_reciprocal(p: Coeffs) -> bool:
    p = trim(p)
    return p == p[::-1] or p == [-a for a in p[::-1]]


# ---------------------------------------------------------------------------
# Laurent polynomials


_TERM_SPLIT = re.compile(r"(?<=[^\^*/+\-(])\s*(?=[+-])")
_VAR = re.compile(r"^(x(\d+)|x|y|z)$")
_ALIASES = {"x": 1, "y": 2, "z": 3}


def _var_index(name: str) -> int:
    m = _VAR.match(name)
    if not m:
        raise ContractViolation(f"bad variable name {name!r}")
    if m.group(2):
        idx = int(m.group(2))
        if idx < 1:
            raise ContractViolation("variables are numbered from x1")
        return idx
    return _ALIASES[name]


@dataclass(frozen=True)
class LaurentPolynomialZ:
    """Integer Laurent polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero integer coefficients.
    """

    nvars: int
    terms: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        if self.nvars < 1:
            raise ContractViolation("need at least one variable")
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise ContractViolation(f"exponent vector {exps} has wrong length for {self.nvars} variables")
            if int(c) != c:
                raise ContractViolation(f"non-integer coefficient {c!r}")
            if c:
                clean[exps] = clean.get(exps, 0) + int(c)
        object.__setattr__(self, "terms", {e: c for e, c in sorted(clean.items()) if c})

    # construction ---------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], shift: int = 0) -> "LaurentPolynomialZ":
        """Univariate polynomial from ascending coefficients, times ``x^shift``."""
        return cls(1, {(i + shift,): int(c) for i, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "LaurentPolynomialZ":
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ContractViolation("empty polynomial text")
        raw_terms = []
        for chunk in _TERM_SPLIT.split(s):
            if chunk:
                raw_terms.append(chunk)
        parsed = []
        top = 0
        for t in raw_terms:
            sign = 1
            while t and t[0] in "+-":
                sign = -sign if t[0] == "-" else sign
                t = t[1:]
            if not t:
                raise ContractViolation(f"dangling sign in {text!r}")
            coef = sign
            exps: dict[int, int] = {}
            for op, factor in re.findall(r"([*/]?)([^*/]+)", t):
                inv = op == "/"
                if re.fullmatch(r"\d+", factor):
                    if inv:
                        raise ContractViolation("division by an integer is not allowed")
                    coef *= int(factor)
                    continue
                m = re.fullmatch(r"([a-z]\d*)(?:\^\(?([+-]?\d+)\)?)?", factor)
                if not m:
                    raise ContractViolation(f"cannot parse factor {factor!r} in {text!r}")
                idx = _var_index(m.group(1))
                e = int(m.group(2)) if m.group(2) else 1
                exps[idx] = exps.get(idx, 0) + (-e if inv else e)
                top = max(top, idx)
            parsed.append((coef, exps))
        n = nvars or max(top, 1)
        if top > n:
            raise ContractViolation(f"text uses x{top} but nvars={n}")
        terms: dict[tuple[int, ...], int] = {}
        for coef, exps in parsed:
            key = tuple(exps.get(i, 0) for i in range(1, n + 1))
            terms[key] = terms.get(key, 0) + coef
        return cls(n, terms)

    def __hash__(self):
        return hash((self.nvars, tuple(self.terms.items())))

    # basic properties ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            factors = [f"x{i + 1}" + (f"^{e}" if e != 1 else "") for i, e in enumerate(exps) if e]
            body = "*".join(factors)
            if not body:
                mag = str(abs(c))
            elif abs(c) == 1:
                mag = body
            else:
                mag = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mag))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {m}" for s, m in parts[1:])

    def min_exponents(self) -> tuple[int, ...]:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def cleared(self) -> "LaurentPolynomialZ":
        """Multiply by the smallest monomial that clears every negative exponent.

        Variables that only occur with non-negative exponents are left alone, so
        ``x1^3`` is its own cleared form.
        """
        if not self.terms:
            return self
        lo = tuple(min(e, 0) for e in self.min_exponents())
        return LaurentPolynomialZ(
            self.nvars, {tuple(a - b for a, b in zip(e, lo)): c for e, c in self.terms.items()}
        )

    def degrees(self) -> tuple[int, ...]:
        """Partial degrees of the cleared form."""
        p = self.cleared()
        if not p.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in p.terms) for i in range(self.nvars))

    def coefficients(self) -> list[int]:
        return list(self.terms.values())

    def active_variables(self) -> list[int]:
        d = self.degrees()
        return [i for i in range(self.nvars) if d[i] > 0]

    def __mul__(self, other: "LaurentPolynomialZ") -> "LaurentPolynomialZ":
        n = max(self.nvars, other.nvars)
        a, b = self.with_nvars(n), other.with_nvars(n)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                k = tuple(x + y for x, y in zip(e1, e2))
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPolynomialZ(n, out)

    def with_nvars(self, n: int) -> "LaurentPolynomialZ":
        if n < self.nvars:
            if any(any(e[n:]) for e in self.terms):
                raise ContractViolation("cannot drop a variable that occurs")
            return LaurentPolynomialZ(n, {e[:n]: c for e, c in self.terms.items()})
        return LaurentPolynomialZ(n, {e + (0,) * (n - self.nvars): c for e, c in self.terms.items()})

    def monomial_shift(self, shift: Iterable[int]) -> "LaurentPolynomialZ":
        shift = tuple(shift)
        return LaurentPolynomialZ(
            self.nvars, {tuple(a + b for a, b in zip(e, shift)): c for e, c in self.terms.items()}
        )

    # univariate views ----------------------------------------------------

    def univariate_coeffs(self) -> Coeffs:
        """Ascending coefficients of the cleared form of a univariate polynomial."""
        if len(self.active_variables()) > 1:
            raise ContractViolation("polynomial involves more than one variable")
        p = self.cleared()
        if not p.terms:
            return []
        idx = self.active_variables()[0] if self.active_variables() else 0
        out = [0] * (p.degrees()[idx] + 1)
        for e, c in p.terms.items():
            out[e[idx]] += c
        return out

    def collinear_reduction(self) -> tuple[Coeffs, tuple[int, ...]] | None:
        """Write ``P = x^u * Q(x^v)`` with ``v`` primitive, when the exponents are collinear.

        Returns (ascending coefficients of Q, v), or ``None`` when the support
        spans more than a line. Monomial substitution preserves the Mahler measure.
        """
        p = self.cleared()
        if not p.terms:
            return None
        base = min(p.terms)
        diffs = [tuple(a - b for a, b in zip(e, base)) for e in p.terms if e != base]
        if not diffs:
            return [p.terms[base]], (0,) * self.nvars
        g = 0
        for d in diffs:
            for x in d:
                g = math.gcd(g, x)
        v = tuple(x // g for x in diffs[0])
        g0 = 0
        for x in v:
            g0 = math.gcd(g0, x)
        v = tuple(x // g0 for x in v)
        steps = {}
        for e, c in p.terms.items():
            d = tuple(a - b for a, b in zip(e, base))
            ks = {di // vi for di, vi in zip(d, v) if vi}
            if len(ks) != 1 or any(di != next(iter(ks)) * vi for di, vi in zip(d, v)):
                return None
            steps[next(iter(ks))] = c
        lo = min(steps)
        out = [0] * (max(steps) - lo + 1)
        for k, c in steps.items():
            out[k - lo] = c
        return out, v


def delta_degree(p: LaurentPolynomialZ) -> int:
    """``sum_i i * deg_{x_i}`` of the cleared form (variables numbered from 1)."""
    if p.is_zero():
        raise DomainError("delta of the zero polynomial")
    return sum((i + 1) * d for i, d in enumerate(p.degrees()))
