"""Explicit inequalities and counting bounds for Dedekind special values.

Fixed constants: ``c3 = 11.5^-39`` and ``c4 = 1.15`` from Zimmert's regulator
bound ``R_F >= c3 * c4^d``. Every other constant is only known to be
"effectively computable"; :class:`BoundConstants` carries documented desk-scale
defaults that can be overridden from a key=value file.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from zetalab.errors import ContractViolation, DomainError
from zetalab.nfdata import C3, C4, NumberFieldRecord
from zetalab.zeta import gamma_C_leading, gamma_R_leading

REL_TOL = 1e-12  # slack for float rounding in chain comparisons


@dataclass(frozen=True)
class BoundConstants:
    """Configured constants.

    Defaults (desk scale, quadratic database with |Delta| <= 10^4):

    * c0 = 8: smallest round value with count_bound_negative above the observed
      count of |zeta*(-1)| <= B for B in {10, 100, 1000}.
    * c1 = 100, c2 = 1: count_bound_zero above the observed |S_{B,0}| for
      B in {1.5, 2, 5, 10}, with a factor 10 of slack for truncation.
    * c5, c6: fitted so that ``c5 * B * log(B)^2`` and ``c6 * log(B)`` dominate
      the solved R_max and d_max for B >= e; both ratios peak at B = e
      (2.52e6 and 794).
    * a3 = sqrt(3): |Delta| >= a3^d for every field of degree d >= 2.
    * c7, c9, c10, a1, a2, a4: placeholders (1.0), exploration only.
    * c8(eps) = c8_scale * eps: placeholder for Stark's function.
    """

    c0: float = 8.0
    c1: float = 100.0
    c2: float = 1.0
    c5: float = 2.6e6
    c6: float = 800.0
    c7: float = 1.0
    c9: float = 1.0
    c10: float = 1.0
    a1: float = 1.0
    a2: float = 1.0
    a3: float = math.sqrt(3.0)
    a4: float = 1.0
    c8_scale: float = 1.0
    c3: float = field(default=C3, init=False)
    c4: float = field(default=C4, init=False)

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ContractViolation(f"constant {f.name} must be a positive finite real, got {v!r}")

    def c8(self, eps: float) -> float:
        if not 0 < eps <= 0.5:
            raise DomainError("c8 is defined on (0, 1/2]")
        return self.c8_scale * eps

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_mapping(cls, values: dict) -> "BoundConstants":
        names = {f.name for f in fields(cls) if f.init}
        unknown = set(values) - names
        if {"c3", "c4"} & unknown:
            raise ContractViolation("c3 and c4 are fixed and cannot be configured")
        if unknown:
            raise ContractViolation(f"unknown constants: {', '.join(sorted(unknown))}")
        return replace(cls(), **{k: float(v) for k, v in values.items()})

    @classmethod
    def load(cls, path: str | Path) -> "BoundConstants":
        """Read ``key = value`` lines; ``#`` starts a comment."""
        values = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ContractViolation(f"{path}:{lineno}: expected key = value")
            key, val = (part.strip() for part in line.split("=", 1))
            try:
                values[key] = float(val)
            except ValueError:
                raise ContractViolation(f"{path}:{lineno}: {val!r} is not a number") from None
        return cls.from_mapping(values)


DEFAULT_CONSTANTS = BoundConstants()


def regulator_lower_bound(d: int) -> float:
    """Zimmert's lower bound ``c3 * c4^d`` for the regulator of a degree-d field."""
    if d < 1:
        raise DomainError("degree must be at least 1")
    return C3 * C4**d


def _exp(x: float) -> float:
    """``exp`` that saturates to ``inf`` instead of raising; bounds this large carry no information."""
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _le(a: float, b: float) -> bool:
    return a <= b + REL_TOL * max(abs(a), abs(b))


def zimmert_log_bound(R: float, B: float) -> float:
    """Right end of the chain: ``4 B log^2(R/c3) / log^2(c4)``."""
    return 4 * B * math.log(R / C3) ** 2 / math.log(C4) ** 2


@dataclass(frozen=True)
class ChainReport:
    label: str
    B: float
    R: float
    hR: float
    wB: float
    four_d2B: float
    log_bound: float
    hypothesis: bool  # |zeta*(0)| <= B
    passes: dict  # step -> bool, or None when not asserted

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.passes.values())

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "B": self.B,
            "R": self.R,
            "hR": self.hR,
            "wB": self.wB,
            "4d2B": self.four_d2B,
            "log_bound": self.log_bound,
            "hypothesis": "met" if self.hypothesis else "hypothesis not met",
            **{f"pass_{k}": v for k, v in self.passes.items()},
        }


def verify_chain(F: NumberFieldRecord, B: float) -> ChainReport:
    """Evaluate ``R <= hR <= wB <= 4 d^2 B <= 4 B log^2(R/c3)/log^2(c4)``.

    Step (b) is the class number formula applied to ``|zeta*(0)| <= B``; when
    that hypothesis fails the step is reported as ``None`` (not asserted).
    """
    if not B > 0:
        raise DomainError("B must be positive")
    R, hR = F.reg, F.h * F.reg
    wB = F.w * B
    four = 4 * F.degree**2 * B
    lb = zimmert_log_bound(R, B)
    hyp = _le(hR / F.w, B)
    passes = {
        "a": _le(R, hR),
        "b": _le(hR, wB) if hyp else None,
        "c": _le(wB, four),
        "d": _le(four, lb),
    }
    return ChainReport(F.label, B, R, hR, wB, four, lb, hyp, passes)


def _chain_gap(R: float, B: float) -> float:
    return zimmert_log_bound(R, B) - R


def solve_degree_and_regulator_bounds(B: float, consts: BoundConstants = DEFAULT_CONSTANTS) -> tuple[float, int]:
    """Largest ``R`` with ``R <= 4 B log^2(R/c3)/log^2(c4)`` and the degree bound it implies.

    The gap is positive at ``R = 1`` for every ``B > 1`` and negative for large
    ``R``; bisection in ``log R`` locates the last crossing. ``d_max`` is the
    largest ``d`` with ``c3 * c4^d <= R_max``.
    """
    if not B > 1:
        raise DomainError("solve_degree_and_regulator_bounds needs B > 1")
    lo = 1.0
    hi = 2.0
    while _chain_gap(hi, B) >= 0:
        lo, hi = hi, hi * hi
    # the gap is concave in log R beyond its maximum, so one sign change remains in [lo, hi]
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if mid in (lo, hi):
            break
        if _chain_gap(mid, B) >= 0:
            lo = mid
        else:
            hi = mid
    r_max = lo
    if _chain_gap(r_max, B) < 0:
        raise ContractViolation("bisection lost the sign of the chain inequality")
    d_max = int(math.floor(math.log(r_max / C3) / math.log(C4)))
    while regulator_lower_bound(d_max + 1) <= r_max:
        d_max += 1
    while d_max >= 1 and regulator_lower_bound(d_max) > r_max:
        d_max -= 1
    return r_max, d_max


def log_form_bounds(B: float, consts: BoundConstants = DEFAULT_CONSTANTS) -> tuple[float, float]:
    """Closed-form envelopes ``(c5 * B * log(B)^2, c6 * log(B))`` for ``B >= e``.

    Solving the chain gives ``R_max ~ 4 B log(B)^2 / log(c4)^2``; the decay
    ``B / log(B)^2`` cannot dominate it, so the envelope uses ``B log(B)^2``.
    """
    if B < math.e:
        raise DomainError("log-form envelopes are calibrated for B >= e")
    lb = math.log(B)
    return consts.c5 * B * lb * lb, consts.c6 * lb


def discriminant_bound_left(B: float, n: int) -> float:
    """``B^(1/(n+1/2))``: the discriminant bound as literally stated for ``|zeta*(-n)| <= B``.

    This assumes each gamma ratio in the functional equation has modulus at
    least 1, which fails in the present normalisation (see
    :func:`gamma_ratio_moduli`); use :func:`discriminant_bound_left_corrected`
    for a bound that holds.
    """
    if B < 1:
        raise DomainError("discriminant_bound_left needs B >= 1")
    if n < 1:
        raise DomainError("n must be a positive integer")
    return B ** (1.0 / (n + 0.5))


def gamma_ratio_moduli(n: int) -> tuple[float, float]:
    """``(|Gamma_R(1+n)/Gamma_R*(-n)|, |Gamma_C(1+n)/Gamma_C*(-n)|)``."""
    rr = abs(gamma_R_leading(1 + n).leading / gamma_R_leading(-n).leading)
    rc = abs(gamma_C_leading(1 + n).leading / gamma_C_leading(-n).leading)
    return rr, rc


def discriminant_bound_left_corrected(B: float, n: int, r1: int, r2: int) -> float:
    """Signature-aware bound ``(B / (rho_R^r1 rho_C^r2))^(1/(n+1/2))``.

    Follows from the functional equation and ``zeta_F(1+n) >= 1``.
    """
    if B <= 0:
        raise DomainError("B must be positive")
    if n < 1:
        raise DomainError("n must be a positive integer")
    rr, rc = gamma_ratio_moduli(n)
    return (B / (rr**r1 * rc**r2)) ** (1.0 / (n + 0.5))


def count_bound_negative(B: float, n: int, consts: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """``exp((c0/(1/2-n)) log B log(log B/(1/2-n)))`` for ``n <= -1`` and ``B >= e^(1/2-n)``."""
    if n > -1 or n != int(n):
        raise DomainError("count_bound_negative needs an integer n <= -1")
    k = 0.5 - n
    if not B >= math.exp(k):
        raise DomainError(f"the count bound is stated for B >= exp(1/2 - n) = {math.exp(k):.6g}")
    lb = math.log(B)
    return _exp(consts.c0 / k * lb * math.log(lb / k))


def count_bound_zero(B: float, consts: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """``exp(c1 B^(c2 loglog B) (loglog B)^2)`` for ``B > 1``.

    At ``B = e`` the value is exactly 1, so no choice of constants dominates
    the true count in a neighbourhood of e.
    """
    if not B > 1:
        raise DomainError("count_bound_zero needs B > 1")
    ll = math.log(math.log(B))
    try:
        inner = B ** (consts.c2 * ll)
    except OverflowError:
        return math.inf
    return _exp(consts.c1 * inner * ll * ll)


def friedman_discriminant_bound(d: int, R: float, consts: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """``d^d exp(max(1, d^(2d) R / c7))`` for non-CM fields."""
    if d < 1:
        raise DomainError("degree must be at least 1")
    if not R > 0:
        raise DomainError("regulator must be positive")
    return float(d) ** d * _exp(max(1.0, float(d) ** (2 * d) * R / consts.c7))


def cm_discriminant_bound(
    F: NumberFieldRecord,
    eps: float,
    subfield_reg: float,
    consts: BoundConstants = DEFAULT_CONSTANTS,
) -> float:
    """Discriminant bound for a CM field of degree d.

    ``h`` and ``d`` are the CM field's own; ``subfield_reg`` is the regulator of
    its maximal totally real subfield, where the non-CM bound is applied.
    """
    if not F.cm:
        raise DomainError(f"{F.label} is not flagged CM")
    d = F.degree
    c8 = consts.c8(eps)
    denom = d - 3 - eps * d
    if denom <= 0:
        raise DomainError(f"d - 3 - eps*d = {denom:.6g} must be positive")
    if not subfield_reg > 0:
        raise DomainError("subfield regulator must be positive")
    inner = (d / 2) ** (d / 2) * _exp(max(1.0, float(d) ** d * subfield_reg / (2**d * consts.c7)))
    base = F.h * math.factorial(d) / c8**d * inner ** (0.5 - 1.0 / d)
    return base ** (d / denom)


def cm_outer_exponent(d: int, eps: float) -> float:
    return d / (d - 3 - eps * d)


def couveignes_count(X: float, d: int, consts: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """``d^(a1 d log(d)^2) X^(a2 log(d)^2)``; equal to 1 at ``d = 1``."""
    if X < 1:
        raise DomainError("X must be at least 1")
    if d < 1:
        raise DomainError("degree must be at least 1")
    l2 = math.log(d) ** 2
    return float(d) ** (consts.a1 * d * l2) * X ** (consts.a2 * l2)


def hermite_count(X: float, consts: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """``exp(a4 log X (loglog X)^2)`` for ``X > e``."""
    if not X > math.e:
        raise DomainError("hermite_count needs X > e")
    lx = math.log(X)
    return _exp(consts.a4 * lx * math.log(lx) ** 2)


def discriminant_lower_bound(d: int, consts: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """``a3^d``, valid for d >= 2 (degree 1 has |Delta| = 1)."""
    if d < 2:
        raise DomainError("the Hermite-Minkowski form needs d >= 2")
    return consts.a3**d
