"""Command-line interface: ``zetalab <command> ...``.

Exit codes: 0 success, 2 domain or contract errors, 3 unconverged numerics.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from zetalab import bounds as bd
from zetalab.errors import DomainError, UnconvergedError, ZetalabError
from zetalab.lattice import LatticeInstance, minkowski_minima
from zetalab.mahler import mahler_measure
from zetalab.nfdata import build_database, load_csv, resolve_field, write_csv
from zetalab.polynomial import LaurentPolynomialZ
from zetalab.survey import brauer_siegel_rows, brauer_siegel_summary, fmt, round_sig, survey
from zetalab.weil import AlgebraicNumber, weil_height
from zetalab.zeta import special_value

EXIT_DOMAIN = 2
EXIT_UNCONVERGED = 3


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None


def _parse_basis(text: str) -> list[list[float]]:
    """Rows separated by ';', entries by ','."""
    try:
        return [[float(v) for v in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad basis {text!r}") from None


def _parse_kv(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


class Emitter:
    def __init__(self, fmt_name: str, stream):
        self.format = fmt_name
        self.stream = stream

    def json(self, obj):
        self.stream.write(json.dumps(_rounded(obj), indent=2) + "\n")

    def table(self, header: list[str], rows: list[list]):
        if self.format == "json":
            self.json([dict(zip(header, r)) for r in rows])
            return
        self.stream.write(",".join(header) + "\n")
        for r in rows:
            self.stream.write(",".join(fmt(v) for v in r) + "\n")

    def record(self, obj: dict):
        if self.format == "json":
            self.json(obj)
        else:
            self.table(list(obj), [list(obj.values())])


def _rounded(obj):
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def _load_db(path: str | None):
    if path is None:
        return None
    db = load_csv(path)
    for lineno, reason in db.rejected:
        print(f"warning: {path}:{lineno} rejected: {reason}", file=sys.stderr)
    return db


def cmd_build_db(args, out: Emitter, consts):
    db = build_database(args.min, args.max, include_rational=args.include_rational, jobs=args.jobs)
    write_csv(db, args.out)
    print(f"wrote {len(db)} records to {args.out}", file=sys.stderr)
    return 0


def cmd_survey(args, out: Emitter, consts):
    db = _load_db(args.db)
    rep = survey(db.records, args.n, args.grid, consts, jobs=args.jobs)
    if out.format == "json":
        out.json(rep.as_json())
    else:
        out.stream.write("\n".join(rep.csv_lines()) + "\n")
    return 0


def cmd_special(args, out: Emitter, consts):
    F = resolve_field(args.field, _load_db(args.db))
    sv = special_value(F, args.n, check=args.check)
    out.record({"field": F.label, **sv.as_json()})
    return 0


def cmd_brauer_siegel(args, out: Emitter, consts):
    db = _load_db(args.db)
    rows = brauer_siegel_rows(db.records)
    if args.summary:
        summary = brauer_siegel_summary(rows)
        out.table(list(summary[0]) if summary else ["band_lo"], [list(s.values()) for s in summary])
    else:
        out.table(["label", "abs_disc", "ratio"], [[r.label, r.abs_disc, r.ratio] for r in rows])
    return 0


def cmd_mahler(args, out: Emitter, consts):
    p = LaurentPolynomialZ.parse(args.poly)
    res = mahler_measure(p, tol=args.tol)
    out.record({"poly": str(p), **res.as_dict()})
    return 0 if res.converged else EXIT_UNCONVERGED


def cmd_weil(args, out: Emitter, consts):
    a = AlgebraicNumber.parse(args.poly)
    hv = weil_height(a)
    out.record({"min_poly": str(a), "degree": a.degree, "height": hv.value, "err_bound": hv.err_bound})
    return 0 if hv.mahler.converged else EXIT_UNCONVERGED


def cmd_minima(args, out: Emitter, consts):
    lat = LatticeInstance(np.array(args.basis), args.norm)
    mus = minkowski_minima(lat, args.radius)
    out.table(["j", "mu"], [[j + 1, float(m)] for j, m in enumerate(mus)])
    return 0


def _need(kv: dict, *keys):
    missing = [k for k in keys if k not in kv]
    if missing:
        raise DomainError(f"missing argument(s): {', '.join(missing)}")
    return [kv[k] for k in keys]


def cmd_bounds(args, out: Emitter, consts):
    kv = _parse_kv(args.args)
    which = args.which
    if which == "regulator":
        (d,) = _need(kv, "d")
        out.record({"d": int(d), "value": bd.regulator_lower_bound(int(d))})
    elif which == "chain":
        f, B = _need(kv, "field", "B")
        rep = bd.verify_chain(resolve_field(f, _load_db(kv.get("db"))), float(B))
        out.record(rep.as_dict())
    elif which == "solve":
        (B,) = _need(kv, "B")
        r_max, d_max = bd.solve_degree_and_regulator_bounds(float(B), consts)
        out.record({"B": float(B), "R_max": r_max, "d_max": d_max})
    elif which == "disc-left":
        B, n = _need(kv, "B", "n")
        rec = {"B": float(B), "n": int(n), "value": bd.discriminant_bound_left(float(B), int(n))}
        if "r1" in kv and "r2" in kv:
            rec["corrected"] = bd.discriminant_bound_left_corrected(float(B), int(n), int(kv["r1"]), int(kv["r2"]))
        out.record(rec)
    elif which == "count-negative":
        B, n = _need(kv, "B", "n")
        out.record({"B": float(B), "n": int(n), "value": bd.count_bound_negative(float(B), int(n), consts)})
    elif which == "count-zero":
        (B,) = _need(kv, "B")
        out.record({"B": float(B), "value": bd.count_bound_zero(float(B), consts)})
    elif which == "friedman":
        d, R = _need(kv, "d", "R")
        out.record({"d": int(d), "R": float(R), "value": bd.friedman_discriminant_bound(int(d), float(R), consts)})
    elif which == "couveignes":
        X, d = _need(kv, "X", "d")
        out.record({"X": float(X), "d": int(d), "value": bd.couveignes_count(float(X), int(d), consts)})
    else:
        raise DomainError(f"unknown bound {which!r}")
    return 0


BOUNDS = ["regulator", "chain", "solve", "disc-left", "count-negative", "count-zero", "friedman", "couveignes"]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zetalab", description="Northcott experiments for zeta special values and heights.")
    p.add_argument("--constants", help="key=value file overriding bound constants")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build-db", help="generate a quadratic field table")
    s.add_argument("--min", type=int, required=True)
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--include-rational", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_build_db)

    s = sub.add_parser("survey", help="count fields with |zeta*(n)| <= B")
    s.add_argument("--db", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--grid", type=_parse_grid, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_survey)

    s = sub.add_parser("special", help="leading coefficient of zeta_F at an integer")
    s.add_argument("--field", required=True, help='"Q", "quad:D" or a database label')
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--db")
    s.add_argument("--check", action="store_true", help="cross-check negative n against analytic continuation")
    s.set_defaults(func=cmd_special)

    s = sub.add_parser("brauer-siegel", help="log(hR)/log sqrt|Delta| per field")
    s.add_argument("--db", required=True)
    s.add_argument("--summary", action="store_true", help="dyadic band quantiles instead of rows")
    s.set_defaults(func=cmd_brauer_siegel)

    s = sub.add_parser("mahler", help="logarithmic Mahler measure")
    s.add_argument("--poly", required=True)
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=cmd_mahler)

    s = sub.add_parser("weil", help="Weil height from a minimal polynomial")
    s.add_argument("--poly", required=True)
    s.set_defaults(func=cmd_weil)

    s = sub.add_parser("minima", help="successive minima of a lattice")
    s.add_argument("--basis", type=_parse_basis, required=True, help='rows as "a,b;c,d"')
    s.add_argument("--norm", default="euclidean", choices=["euclidean", "sup", "l1"])
    s.add_argument("--radius", type=float)
    s.set_defaults(func=cmd_minima)

    s = sub.add_parser("bounds", help="evaluate an explicit bound")
    s.add_argument("--which", required=True, choices=BOUNDS)
    s.add_argument("--args", nargs="*", default=[], help="key=value arguments")
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv=None, stream=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Emitter(args.format, stream or sys.stdout)
    try:
        consts = bd.BoundConstants.load(args.constants) if args.constants else bd.DEFAULT_CONSTANTS
        return args.func(args, out, consts)
    except UnconvergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCONVERGED
    except (ZetalabError, argparse.ArgumentTypeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
