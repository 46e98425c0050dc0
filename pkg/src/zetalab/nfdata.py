"""Number-field records: generated quadratic fields and CSV-ingested tables.

Quadratic fields are built from their fundamental discriminant ``D``:

* ``D < 0``: the class number counts reduced binary quadratic forms of
  discriminant ``D``;
* ``D > 0``: the fundamental unit ``(X + Y*sqrt(D))/2`` comes from the exact
  continued-fraction expansion of the ring generator, and the class number from
  ``h = sqrt(D) * L(1, chi_D) / (2 * log eps)`` with ``L(1, chi_D)`` evaluated by
  the log-sine character sum and cross-checked by the digamma sum.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy.special import digamma

from zetalab.errors import ContractViolation, ConventionError, DomainError

C3 = 11.5 ** -39
C4 = 1.15

CSV_COLUMNS = ["label", "degree", "r1", "r2", "disc", "h", "reg", "w"]
OPTIONAL_COLUMNS = ["cm"]

L1_CROSSCHECK_TOL = 1e-9


# ---------------------------------------------------------------------------
# discriminants and characters


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminants(lo: int, hi: int) -> list[int]:
    """Fundamental discriminants in the closed interval ``[lo, hi]``, ascending."""
    return [D for D in range(lo, hi + 1) if is_fundamental(D)]


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(D: int, n: int) -> int:
    """The quadratic character chi_D(n) = (D/n) for a fundamental discriminant D."""
    if not is_fundamental(D):
        raise ContractViolation(f"{D} is not a fundamental discriminant")
    if n < 1:
        raise DomainError("kronecker_symbol needs a positive integer n")
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        result *= 1 if D % 8 in (1, 7) else -1
    if n == 1:
        return result
    return result * _jacobi(D, n)


@lru_cache(maxsize=4)
def _sieve(limit: int):
    """Smallest prime factor and number of prime factors (with multiplicity) below ``limit``."""
    spf = np.zeros(limit, dtype=np.int64)
    for p in range(2, limit):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    omega = np.zeros(limit, dtype=np.int64)
    for a in range(2, limit):
        omega[a] = omega[a // spf[a]] + 1
    return spf, omega


def _sieve_for(q: int):
    limit = 1 << max(10, (q - 1).bit_length())
    return _sieve(limit)


def character_table(D: int) -> np.ndarray:
    """``chi_D(a)`` for ``a = 0, ..., |D|-1`` built multiplicatively from its prime values."""
    if not is_fundamental(D):
        raise ContractViolation(f"{D} is not a fundamental discriminant")
    q = abs(D)
    spf, omega = _sieve_for(q)
    spf, omega = spf[:q], omega[:q]
    a = np.arange(q)
    primes = a[(a >= 2) & (spf == a)]
    chip = np.zeros(q, dtype=np.int64)
    odd = primes[primes > 2]
    base = np.mod(D, odd)
    expo = (odd - 1) // 2
    res = np.ones_like(odd)
    while np.any(expo):
        res = np.where(expo & 1, res * base % odd, res)
        base = base * base % odd
        expo >>= 1
    chip[odd] = np.where(res == 1, 1, np.where(res == 0, 0, -1))
    if q > 2:
        chip[2] = 0 if D % 2 == 0 else (1 if D % 8 == 1 else -1)
    chi = np.zeros(q, dtype=np.int64)
    chi[1 % q] = 1
    for k in range(1, int(omega.max()) + 1 if q > 2 else 1):
        idx = a[omega == k]
        chi[idx] = chip[spf[idx]] * chi[idx // spf[idx]]
    return chi


# ---------------------------------------------------------------------------
# imaginary quadratic: reduced forms


def class_number_imaginary(D: int) -> int:
    """Number of reduced primitive forms ``(a, b, c)`` with ``b^2 - 4ac = D < 0``."""
    if D >= 0 or not is_fundamental(D):
        raise ContractViolation(f"{D} is not a negative fundamental discriminant")
    h = 0
    b = D % 2
    while 3 * b * b <= -D:
        m = (b * b - D) // 4
        a = np.arange(max(b, 1), math.isqrt(m) + 1, dtype=np.int64)
        a = a[m % a == 0]
        c = m // a
        a, c = a[np.gcd(np.gcd(a, b), c) == 1], c[np.gcd(np.gcd(a, b), c) == 1]
        # b and -b give distinct reduced forms unless b = 0, b = a or a = c
        single = (b == 0) | (a == b) | (a == c)
        h += int(np.sum(np.where(single, 1, 2)))
        b += 2
    return h


def roots_of_unity_count(D: int) -> int:
    return {-3: 6, -4: 4}.get(D, 2)


# ---------------------------------------------------------------------------
# real quadratic: fundamental unit and L(1, chi)


@dataclass(frozen=True)
class QuadraticUnit:
    """The unit ``(X + Y*sqrt(D)) / 2`` with norm ``(X^2 - D*Y^2)/4``."""

    D: int
    X: int
    Y: int

    @property
    def norm(self) -> int:
        num = self.X * self.X - self.D * self.Y * self.Y
        if num % 4:
            raise ContractViolation("not an algebraic integer")
        return num // 4

    @property
    def log(self) -> float:
        # eps = X (1 + sqrt(1 - 4N/X^2)) / 2, stable for very large X
        n = self.norm
        return math.log(self.X) + math.log((1 + math.sqrt(1 - 4 * n / (self.X * self.X))) / 2)

    def min_poly(self) -> list[int]:
        """Ascending coefficients of ``x^2 - X x + N``."""
        return [self.norm, -self.X, 1]


def fundamental_unit(D: int, max_steps: int = 10**6) -> QuadraticUnit:
    """Fundamental unit of the real quadratic field of discriminant ``D`` (exact arithmetic)."""
    if D <= 0 or not is_fundamental(D):
        raise ContractViolation(f"{D} is not a positive fundamental discriminant")
    if D % 4 == 1:
        N, P, Q = D, 1, 2
    else:
        N, P, Q = D // 4, 0, 1
    s = math.isqrt(N)
    p_prev, p_cur = 0, 1
    q_prev, q_cur = 1, 0
    for _ in range(max_steps):
        a = (P + s) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        X = 2 * p_cur - q_cur if D % 4 == 1 else 2 * p_cur
        Y = q_cur
        if X * X - D * Y * Y in (4, -4):
            return QuadraticUnit(D, X, Y)
        P = a * Q - P
        Q = (N - P * P) // Q
    raise AssertionError(f"continued fraction for D={D} did not close a period")  # pragma: no cover


def l_one_log_sine(D: int, chi: np.ndarray | None = None) -> float:
    """``L(1, chi_D) = -(1/sqrt D) sum_a chi(a) log sin(pi a / D)`` for ``D > 0``."""
    chi = character_table(D) if chi is None else chi
    a = np.arange(1, D)
    return float(-np.sum(chi[1:] * np.log(np.sin(np.pi * a / D))) / math.sqrt(D))


def l_one_digamma(D: int, chi: np.ndarray | None = None) -> float:
    """``L(1, chi_D) = -(1/q) sum_a chi(a) psi(a/q)``, the limit of the Dirichlet series."""
    chi = character_table(D) if chi is None else chi
    q = abs(D)
    a = np.arange(1, q)
    return float(-np.sum(chi[1:] * digamma(a / q)) / q)


def class_number_real(D: int, unit: QuadraticUnit | None = None) -> int:
    unit = unit or fundamental_unit(D)
    chi = character_table(D)
    l1 = l_one_log_sine(D, chi)
    l1_check = l_one_digamma(D, chi)
    if abs(l1 - l1_check) > L1_CROSSCHECK_TOL:
        raise ConventionError(f"L(1, chi_{D}) routes disagree: {l1} vs {l1_check}")
    h_float = math.sqrt(D) * l1 / (2 * unit.log)
    h = round(h_float)
    if h < 1 or abs(h - h_float) > 1e-6:
        raise ConventionError(f"class number for D={D} is not an integer: {h_float}")
    return h


# ---------------------------------------------------------------------------
# records


def minkowski_disc_lower_bound(d: int, r2: int) -> float:
    """Minkowski: ``sqrt|Delta| >= (pi/4)^r2 * d^d / d!``."""
    return ((math.pi / 4) ** r2 * d**d / math.factorial(d)) ** 2


@dataclass(frozen=True)
class NumberFieldRecord:
    label: str
    degree: int
    r1: int
    r2: int
    disc: int
    h: int
    reg: float
    w: int
    cm: bool = False
    unit: QuadraticUnit | None = field(default=None, compare=False, repr=False)

    @property
    def unit_rank(self) -> int:
        return self.r1 + self.r2 - 1

    @property
    def abs_disc(self) -> int:
        return abs(self.disc)

    def is_quadratic(self) -> bool:
        return self.degree == 2

    def is_rational(self) -> bool:
        return self.degree == 1

    def problems(self) -> list[str]:
        """Every violated record invariant, as human-readable reasons."""
        out = []
        if self.degree < 1:
            out.append("degree must be positive")
        if self.r1 < 0 or self.r2 < 0:
            out.append("negative signature")
        if self.degree != self.r1 + 2 * self.r2:
            out.append("signature mismatch")
        if self.disc == 0:
            out.append("zero discriminant")
        elif (self.disc > 0) != (self.r2 % 2 == 0):
            out.append("discriminant sign mismatch")
        if self.h < 1:
            out.append("class number must be positive")
        if self.w < 2 or self.w % 2:
            out.append("torsion must be even and >= 2")
        if self.w > 4 * self.degree**2:
            out.append("torsion exceeds 4 d^2")
        if not self.reg > 0 or not math.isfinite(self.reg):
            out.append("regulator must be positive")
        elif self.reg < C3 * C4**self.degree:
            out.append("regulator below Zimmert bound")
        if self.unit_rank == 0 and self.reg != 1.0:
            out.append("unit rank 0 requires reg = 1")
        if self.disc and self.degree >= 1 and "signature mismatch" not in out and self.r2 >= 0:
            if abs(self.disc) < minkowski_disc_lower_bound(self.degree, self.r2) * (1 - 1e-12):
                out.append("discriminant below Minkowski bound")
        if self.degree == 2 and not is_fundamental(self.disc):
            out.append("quadratic discriminant is not fundamental")
        if self.degree == 1 and self.disc != 1:
            out.append("degree 1 requires disc = 1")
        if self.cm and (self.r1 != 0 or self.degree % 2):
            out.append("CM flag on a field that is not totally imaginary of even degree")
        return out

    def validate(self) -> "NumberFieldRecord":
        probs = self.problems()
        if probs:
            raise ContractViolation(f"record {self.label}: " + "; ".join(probs))
        return self

    def as_row(self) -> dict:
        return {
            "label": self.label,
            "degree": self.degree,
            "r1": self.r1,
            "r2": self.r2,
            "disc": self.disc,
            "h": self.h,
            "reg": format(self.reg, ".15g"),
            "w": self.w,
        }


def rational_field() -> NumberFieldRecord:
    return NumberFieldRecord("Q", 1, 1, 0, 1, 1, 1.0, 2)


def quadratic_label(D: int) -> str:
    """LMFDB-style label ``2.r1.|D|.1``."""
    return f"2.{2 if D > 0 else 0}.{abs(D)}.1"


def build_quadratic(D: int) -> NumberFieldRecord:
    if not is_fundamental(D):
        raise ContractViolation(f"{D} is not a fundamental discriminant")
    if D < 0:
        rec = NumberFieldRecord(
            quadratic_label(D), 2, 0, 1, D, class_number_imaginary(D), 1.0, roots_of_unity_count(D),
            cm=True,
        )
    else:
        unit = fundamental_unit(D)
        rec = NumberFieldRecord(
            quadratic_label(D), 2, 2, 0, D, class_number_real(D, unit), unit.log, 2, unit=unit
        )
    return rec.validate()


def resolve_field(spec: str, db: "FieldDatabase | None" = None) -> NumberFieldRecord:
    """``"Q"``, ``"quad:D"`` or a label present in ``db``."""
    if spec in ("Q", "1.1.1.1"):
        return rational_field()
    if spec.startswith("quad:"):
        try:
            D = int(spec[5:])
        except ValueError:
            raise DomainError(f"bad quadratic field spec {spec!r}") from None
        try:
            return build_quadratic(D)
        except ContractViolation as exc:
            raise DomainError(str(exc)) from None
    if db is not None:
        for r in db.records:
            if r.label == spec:
                return r
    raise DomainError(f"unknown field {spec!r}")


# ---------------------------------------------------------------------------
# databases


@dataclass
class FieldDatabase:
    records: list[NumberFieldRecord]
    provenance: str  # "generated" or "ingested"
    source: str | None = None
    rejected: list[tuple[int, str]] = field(default_factory=list)

    def __post_init__(self):
        labels = [r.label for r in self.records]
        if len(set(labels)) != len(labels):
            raise ContractViolation("duplicate labels in field database")

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def filter(self, pred) -> "FieldDatabase":
        return replace(self, records=[r for r in self.records if pred(r)])


def _sort_key(rec: NumberFieldRecord):
    return (abs(rec.disc), rec.disc > 0, rec.label)


def build_database(lo: int, hi: int, include_rational: bool = False, jobs: int = 1) -> FieldDatabase:
    """Quadratic fields with fundamental discriminant in ``[lo, hi]``, ordered by |D| then sign."""
    discs = fundamental_discriminants(lo, hi)
    if jobs > 1 and len(discs) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            recs = list(ex.map(build_quadratic, discs, chunksize=64))
    else:
        recs = [build_quadratic(D) for D in discs]
    if include_rational:
        recs.append(rational_field())
    recs.sort(key=_sort_key)
    return FieldDatabase(recs, "generated")


def write_csv(db: FieldDatabase | Iterable[NumberFieldRecord], path) -> None:
    records = db.records if isinstance(db, FieldDatabase) else list(db)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow(r.as_row())


_INT_COLUMNS = ("degree", "r1", "r2", "disc", "h", "w")


def parse_row(row: dict) -> NumberFieldRecord:
    """One CSV row to a record; raises ContractViolation with the reason on failure."""
    vals = {}
    for col in _INT_COLUMNS:
        raw = (row.get(col) or "").strip()
        try:
            vals[col] = int(raw)
        except ValueError:
            raise ContractViolation(f"column {col!r}: {raw!r} is not an integer") from None
    try:
        reg = float(row["reg"])
    except (TypeError, ValueError):
        raise ContractViolation(f"column 'reg': {row.get('reg')!r} is not a number") from None
    cm_raw = (row.get("cm") or "0").strip().lower()
    label = (row.get("label") or "").strip()
    if not label:
        raise ContractViolation("empty label")
    rec = NumberFieldRecord(label, reg=reg, cm=cm_raw in ("1", "true", "yes"), **vals)
    return rec.validate()


def load_csv(path) -> FieldDatabase:
    """Load a field table, validating each row; failing rows go to ``rejected``."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise ContractViolation(f"{path}: missing column(s) {', '.join(missing)}")
        records, rejected, seen = [], [], set()
        for lineno, row in enumerate(reader, start=2):
            try:
                rec = parse_row(row)
            except ContractViolation as exc:
                rejected.append((lineno, str(exc)))
                continue
            if rec.label in seen:
                rejected.append((lineno, f"duplicate label {rec.label}"))
                continue
            seen.add(rec.label)
            records.append(rec)
    return FieldDatabase(records, "ingested", str(path), rejected)


def record_to_dict(rec: NumberFieldRecord) -> dict:
    d = asdict(rec)
    d.pop("unit", None)
    return d
