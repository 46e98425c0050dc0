"""Special values of Dedekind zeta functions.

Archimedean factors use Deninger's normalisation

    Gamma_C(s) = (2 pi)^-s Gamma(s),    Gamma_R(s) = pi^(-s/2) / sqrt(2) * Gamma(s/2).

Left of the critical strip the special value comes from the functional equation

    zeta_F*(-n) = |Delta|^(n+1/2) (Gamma_R(1+n)/Gamma_R*(-n))^r1
                  (Gamma_C(1+n)/Gamma_C*(-n))^r2 zeta_F(1+n),

where ``*`` is the leading Laurent coefficient. Vanishing orders follow from
the pole orders of the gamma factors: Gamma_R has a simple pole at every
non-positive even integer, Gamma_C at every non-positive integer, and the
completed zeta function is regular there, so ``ord_{s=-n} zeta_F`` is
``r2 + r1*[n even]`` for ``n >= 1``.

At s = 0 and s = 1 the class number formula gives the leading coefficients
directly from (h, R, w, Delta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from zetalab.errors import ConventionError, DomainError
from zetalab.hurwitz import SeriesValue, dirichlet_l, riemann_zeta
from zetalab.nfdata import NumberFieldRecord, character_table

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class GammaFactorValue:
    which: str  # "R" or "C"
    point: float
    order: int  # 0 regular, -1 simple pole
    leading: float


def _nonpositive_integer(s: float) -> int | None:
    if s <= 0 and float(s).is_integer():
        return int(-s)
    return None


def gamma_R_leading(s: float) -> GammaFactorValue:
    m2 = _nonpositive_integer(s)
    if m2 is not None and m2 % 2 == 0:
        m = m2 // 2
        # Res_{s=-2m} Gamma(s/2) = 2 (-1)^m / m!
        return GammaFactorValue("R", s, -1, math.pi**m / SQRT2 * 2 * (-1) ** m / math.factorial(m))
    return GammaFactorValue("R", s, 0, math.pi ** (-s / 2) / SQRT2 * math.gamma(s / 2))


def gamma_C_leading(s: float) -> GammaFactorValue:
    m = _nonpositive_integer(s)
    if m is not None:
        return GammaFactorValue("C", s, -1, (2 * math.pi) ** m * (-1) ** m / math.factorial(m))
    return GammaFactorValue("C", s, 0, (2 * math.pi) ** (-s) * math.gamma(s))


@dataclass(frozen=True)
class SpecialValue:
    point: int
    order: int  # -1 is a simple pole
    leading: float
    method: str
    err_bound: float = 0.0

    def as_json(self) -> dict:
        return {
            "point": self.point,
            "order": self.order,
            "leading": self.leading,
            "method": self.method,
            "err_bound": self.err_bound,
        }


def _check_supported(F: NumberFieldRecord):
    if F.degree not in (1, 2):
        raise DomainError(
            f"field {F.label} of degree {F.degree} needs abelian factorization for series evaluation"
        )


@lru_cache(maxsize=256)
def _character(D: int):
    return character_table(D)


def dedekind_zeta_convergent(F: NumberFieldRecord, s: float, tol: float = 1e-12) -> SeriesValue:
    """``zeta_F(s)`` for real ``s > 1`` and F = Q or quadratic, via ``zeta(s) * L(s, chi_D)``."""
    _check_supported(F)
    if not s > 1:
        raise DomainError("dedekind_zeta_convergent needs s > 1")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    if F.degree == 1:
        return riemann_zeta(s, tol / 2)
    z = riemann_zeta(s, tol / 4)
    chi = _character(F.disc)
    # |L(s, chi)| <= zeta(s), so tol/(4 zeta) keeps the product error below tol/2
    lv = dirichlet_l(s, chi, tol / (4 * z.value))
    err = abs(z.value) * lv.err_bound + abs(lv.value) * z.err_bound + z.err_bound * lv.err_bound
    return SeriesValue(z.value * lv.value, err)


def vanishing_order(F: NumberFieldRecord, n: int) -> int:
    if n != int(n):
        raise DomainError("special values are taken at integers")
    n = int(n)
    if n <= -1:
        return F.r2 + (F.r1 if n % 2 == 0 else 0)
    if n == 0:
        return F.r1 + F.r2 - 1
    if n == 1:
        return -1
    return 0


def functional_equation_factor(F: NumberFieldRecord, n: int) -> float:
    """The factor multiplying ``zeta_F(1+n)`` in the functional equation."""
    gr = gamma_R_leading(1 + n).leading / gamma_R_leading(-n).leading
    gc = gamma_C_leading(1 + n).leading / gamma_C_leading(-n).leading
    return F.abs_disc ** (n + 0.5) * gr**F.r1 * gc**F.r2


def special_value_negative(
    F: NumberFieldRecord, n: int, tol: float = 1e-10, check: bool = True
) -> SpecialValue:
    """Leading coefficient of ``zeta_F`` at ``s = -n`` (n >= 1) via the functional equation.

    With ``check`` the result is compared against the Hurwitz-zeta analytic
    continuation; relative disagreement above ``tol`` raises ConventionError.
    """
    if n < 1 or n != int(n):
        raise DomainError("special_value_negative needs an integer n >= 1")
    _check_supported(F)
    zv = dedekind_zeta_convergent(F, 1 + n, tol * 1e-3)
    factor = functional_equation_factor(F, n)
    leading = factor * zv.value
    err = abs(factor) * zv.err_bound + 8 * 2.2e-16 * abs(leading)
    if check:
        other = hurwitz_continuation_leading(F, n)
        if abs(other - leading) > tol * abs(other):
            raise ConventionError(
                f"functional equation gives {leading!r} for {F.label} at -{n}, "
                f"analytic continuation gives {other!r}"
            )
    return SpecialValue(-n, vanishing_order(F, -n), leading, "functional_equation", err)


def hurwitz_continuation_leading(F: NumberFieldRecord, n: int, dps: int = 30) -> float:
    """Independent route: leading coefficient at ``s = -n`` from mpmath's analytic continuation.

    ``zeta_F = zeta * L(., chi_D)``; each factor vanishes to order at most one
    at a negative integer (zeta at even n, L at n of the character's parity),
    so the leading coefficient is a product of values and first derivatives.
    """
    _check_supported(F)
    s = -n
    with mpmath.workdps(dps):
        z = mpmath.zeta(s, 1, 1) if n % 2 == 0 else mpmath.zeta(s)
        if F.degree == 1:
            return float(z)
        D = F.disc
        q = abs(D)
        chi = _character(D)
        even_char = D > 0
        l_vanishes = (n % 2 == 0) == even_char
        qs = mpmath.mpf(q) ** (-s)
        if l_vanishes:
            tot = mpmath.fsum(int(chi[a]) * mpmath.zeta(s, mpmath.mpf(a) / q, 1) for a in range(1, q) if chi[a])
            val = mpmath.fsum(int(chi[a]) * mpmath.zeta(s, mpmath.mpf(a) / q) for a in range(1, q) if chi[a])
            lval = qs * tot - mpmath.log(q) * qs * val
        else:
            lval = qs * mpmath.fsum(int(chi[a]) * mpmath.zeta(s, mpmath.mpf(a) / q) for a in range(1, q) if chi[a])
        return float(z * lval)


def special_value_zero(F: NumberFieldRecord) -> SpecialValue:
    """Class number formula: ``zeta_F*(0) = -h R / w``."""
    return SpecialValue(0, F.r1 + F.r2 - 1, -F.h * F.reg / F.w, "class_number_formula")


def special_value_one(F: NumberFieldRecord) -> SpecialValue:
    """Residue at the simple pole: ``2^r1 (2 pi)^r2 h R / (w sqrt|Delta|)``."""
    res = 2**F.r1 * (2 * math.pi) ** F.r2 * F.h * F.reg / (F.w * math.sqrt(F.abs_disc))
    return SpecialValue(1, -1, res, "residue_formula")


def special_value_positive(F: NumberFieldRecord, n: int, tol: float = 1e-12) -> SpecialValue:
    if n < 2:
        raise DomainError("series evaluation of zeta_F(n) needs n >= 2")
    zv = dedekind_zeta_convergent(F, n, tol)
    return SpecialValue(n, 0, zv.value, "direct_series", zv.err_bound)


def special_value(F: NumberFieldRecord, n: int, tol: float = 1e-10, check: bool = False) -> SpecialValue:
    """Dispatch on ``n``: functional equation, class number formula, residue or series."""
    if n != int(n):
        raise DomainError("special values are taken at integers")
    n = int(n)
    if n <= -1:
        return special_value_negative(F, -n, tol, check)
    if n == 0:
        return special_value_zero(F)
    if n == 1:
        return special_value_one(F)
    return special_value_positive(F, n, tol)


def residue_by_series(F: NumberFieldRecord, eps: float = 1e-4, tol: float = 1e-10) -> float:
    """``(s - 1) zeta_F(s)`` at ``s = 1 + eps``: a series-side estimate of the residue."""
    return eps * dedekind_zeta_convergent(F, 1 + eps, tol).value
