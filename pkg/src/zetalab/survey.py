"""Northcott surveys of Dedekind special values over a field database."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from zetalab.bounds import DEFAULT_CONSTANTS, BoundConstants, count_bound_negative, count_bound_zero, verify_chain
from zetalab.errors import DomainError
from zetalab.nfdata import NumberFieldRecord
from zetalab.zeta import special_value

SIG_DIGITS = 12


def fmt(x) -> str:
    """Fixed 12-significant-digit rendering (correctly rounded, so ties go to even)."""
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return str(x)
        return format(x, f".{SIG_DIGITS}g")
    return str(x)


def round_sig(x: float) -> float:
    return float(fmt(x)) if isinstance(x, float) and math.isfinite(x) else x


@dataclass(frozen=True)
class FieldRow:
    label: str
    abs_disc: int
    value: float | None  # |zeta*(n)|, None for skipped fields
    order: int | None
    note: str = ""


@dataclass
class SurveyReport:
    n: int
    B_grid: list[float]
    counts: list[int]
    rows: list[FieldRow]
    constants: dict
    bounds: list[float | None] = field(default_factory=list)
    bound_notes: list[str] = field(default_factory=list)

    def counted(self, B: float) -> list[FieldRow]:
        return [r for r in self.rows if r.value is not None and r.value <= B]

    def as_json(self) -> dict:
        return {
            "n": self.n,
            "B_grid": [round_sig(b) for b in self.B_grid],
            "counts": self.counts,
            "bounds": [round_sig(b) if b is not None else None for b in self.bounds],
            "bound_notes": self.bound_notes,
            "constants": {k: round_sig(float(v)) for k, v in self.constants.items()},
            "rows": [
                {
                    "label": r.label,
                    "abs_disc": r.abs_disc,
                    "value": round_sig(r.value) if r.value is not None else None,
                    "order": r.order,
                    "note": r.note,
                }
                for r in self.rows
            ],
        }

    def csv_lines(self) -> list[str]:
        out = [f"# n={self.n}"]
        out += [f"# {k}={fmt(float(v))}" for k, v in self.constants.items()]
        out.append("B,count,bound,bound_note")
        for b, c, bd, note in zip(self.B_grid, self.counts, self.bounds, self.bound_notes):
            out.append(f"{fmt(b)},{c},{fmt(bd)},{note}")
        out.append("")
        out.append("label,abs_disc,value,order,note")
        for r in self.rows:
            out.append(f"{r.label},{r.abs_disc},{fmt(r.value)},{fmt(r.order)},{r.note}")
        return out


def _field_value(args) -> FieldRow:
    F, n = args
    try:
        sv = special_value(F, n)
    except DomainError as exc:
        return FieldRow(F.label, F.abs_disc, None, None, f"skipped: {exc}")
    return FieldRow(F.label, F.abs_disc, abs(sv.leading), sv.order)


def field_rows(records, n: int, jobs: int = 1) -> list[FieldRow]:
    """``|zeta_F*(n)|`` per record; the output order follows the input order."""
    tasks = [(F, n) for F in records]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_field_value, tasks, chunksize=64))
    return [_field_value(t) for t in tasks]


def _bound_at(n: int, B: float, consts: BoundConstants) -> tuple[float | None, str]:
    try:
        if n == 0:
            return count_bound_zero(B, consts), ""
        if n <= -1:
            return count_bound_negative(B, n, consts), ""
    except DomainError as exc:
        return None, f"outside validity: {exc}"
    return None, "no bound for n = 1"


def survey(
    records,
    n: int,
    B_grid,
    consts: BoundConstants = DEFAULT_CONSTANTS,
    jobs: int = 1,
) -> SurveyReport:
    """Counts ``|S_{B,n}| = #{F : |zeta_F*(n)| <= B}`` along an ascending grid."""
    if n != int(n) or n > 1:
        raise DomainError("surveys are defined for integers n <= 1")
    grid = [float(b) for b in B_grid]
    if not grid or any(b <= 0 for b in grid) or grid != sorted(grid):
        raise DomainError("B grid must be a non-empty ascending list of positive reals")
    rows = field_rows(list(records), int(n), jobs)
    values = np.array([r.value for r in rows if r.value is not None], dtype=float)
    counts = [int(np.count_nonzero(values <= b)) for b in grid]
    bounds, notes = zip(*(_bound_at(int(n), b, consts) for b in grid))
    return SurveyReport(int(n), grid, counts, rows, consts.as_dict(), list(bounds), list(notes))


def chain_failures(records, B: float) -> list:
    """Chain reports for fields in ``S_{B,0}`` that violate a step (expected: none)."""
    out = []
    for F in records:
        rep = verify_chain(F, B)
        if rep.hypothesis and not rep.ok:
            out.append(rep)
    return out


def counts_by_range(records, n: int, B: float, limits) -> list[int]:
    """``|S_{B,n}|`` restricted to ``|Delta| <= X`` for each ``X`` in ``limits``."""
    rows = [r for r in field_rows(records, n) if r.value is not None]
    return [sum(1 for r in rows if r.abs_disc <= X and r.value <= B) for X in limits]


def band_fractions(records, n: int, B: float, bands) -> list[float]:
    """Fraction of fields with ``|zeta*(n)| <= B`` among ``X <= |Delta| < 2X`` for each band start ``X``."""
    rows = [r for r in field_rows(records, n) if r.value is not None]
    out = []
    for X in bands:
        band = [r for r in rows if X <= r.abs_disc < 2 * X]
        out.append(sum(1 for r in band if r.value <= B) / len(band) if band else float("nan"))
    return out


@dataclass(frozen=True)
class BrauerSiegelRow:
    label: str
    abs_disc: int
    ratio: float


def brauer_siegel_rows(records) -> list[BrauerSiegelRow]:
    """``log(hR) / log sqrt|Delta|`` for every record with ``|Delta| >= 2``."""
    return [
        BrauerSiegelRow(F.label, F.abs_disc, math.log(F.h * F.reg) / math.log(math.sqrt(F.abs_disc)))
        for F in records
        if F.abs_disc >= 2
    ]


def brauer_siegel_summary(rows: list[BrauerSiegelRow], quantiles=(0.1, 0.5, 0.9)) -> list[dict]:
    """Quantiles of the ratio in dyadic ``|Delta|`` bands."""
    if not rows:
        return []
    top = max(r.abs_disc for r in rows)
    out = []
    lo = 2
    while lo <= top:
        band = [r.ratio for r in rows if lo <= r.abs_disc < 2 * lo]
        if band:
            qs = np.quantile(np.array(band), quantiles)
            out.append({"band_lo": lo, "band_hi": 2 * lo, "count": len(band), **{f"q{q:g}": float(v) for q, v in zip(quantiles, qs)}})
        lo *= 2
    return out


def records_sorted(records: list[NumberFieldRecord]) -> list[NumberFieldRecord]:
    return sorted(records, key=lambda F: (F.abs_disc, F.disc > 0, F.label))
