"""Command-line front end.

Exit codes: 0 success, 1 check mismatch, 2 invalid input, 3 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .arithmetic import IdealFactorization, UnitIdealError, ideal_from_poly
from .drinfeld import DerivationError, derive_f_report, galois_conjugate
from .fixtures import FixtureChecksumError, _data_dir, load_fixture, parse_fixture
from .formulas import (ConsistencyError, FormulaError, RingParams, asymptotic_limit, dv_bound,
                       genus_x0n, genus_x1, hasse_weil, n1_lower_bound, ratio_rows,
                       supersingular_count)
from .gf import make_field
from .polyalg.multi import MultiPoly
from .polyalg.textform import ParseError, to_text, xy_syntax
from .polyalg.uni import UniPoly
from .tower import TowerError, TowerState, count_points, ratio_table, stabilization_report

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
COPRIME_BANNER = "assumption: n is coprime to the characteristic P (not checked)"
OPTION_KEYS = ("format", "jobs")


class InputError(ValueError):
    pass


# config and ideals ------------------------------------------------------------------


def load_config(path: str) -> tuple[RingParams, dict]:
    """RingParams plus the optional ``format`` and ``jobs`` keys.

    A bare name such as ``sec6.json`` falls back to the bundled configs.
    """
    p = Path(path)
    if not p.exists() and (_data_dir() / p.name).exists():
        p = _data_dir() / p.name
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("config must be a JSON object")
    options = {k: data.pop(k) for k in OPTION_KEYS if k in data}
    if "format" in options and options["format"] not in ("json", "csv", "md"):
        raise InputError(f"config format must be json, csv or md, not {options['format']!r}")
    if "jobs" in options and (not isinstance(options["jobs"], int) or options["jobs"] < 1):
        raise InputError("config jobs must be a positive integer")
    return RingParams.from_dict(data), options


def parse_ideal(args, params: RingParams) -> IdealFactorization:
    if args.ideal and args.ideal_poly:
        raise InputError("give either --ideal or --ideal-poly, not both")
    if args.ideal_poly:
        p = params.q
        k = 1
        while p % 2 == 0 and p > 2:
            p //= 2
            k += 1
        F = make_field(p, k) if p ** k == params.q else None
        if F is None:
            raise InputError("--ideal-poly needs q to be a power of 2 or a prime")
        coeffs = [int(c) for c in args.ideal_poly.split(",")]
        return ideal_from_poly(UniPoly(F, coeffs))
    if not args.ideal:
        raise InputError("an ideal is required (--ideal d^r,... or --ideal-poly c0,c1,...)")
    return IdealFactorization.parse(args.ideal, params.q)


# table output -------------------------------------------------------------------------


def _cell(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return "" if v is None else v


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{k: _cell(v) if isinstance(v, Fraction) else v for k, v in r.items()}
                           for r in rows], indent=2)
    cols = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r[c]) for c in cols])
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(str(_cell(r[c])) for c in cols) + " |" for r in rows]
    return "\n".join(lines)


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
        print(f"wrote {out}")
    else:
        print(text)


def _fmt(args, options, out=None) -> str:
    if args.format:
        return args.format
    if out and out.endswith(".csv"):
        return "csv"
    return options.get("format", "json" if out else "md")


# commands ---------------------------------------------------------------------------


def cmd_genus(args) -> int:
    params, _ = load_config(args.config)
    n = parse_ideal(args, params)
    print(COPRIME_BANNER)
    rep = genus_x0n(params, n)
    print(f"ideal: {n}  (|n| = {n.norm})")
    print(f"g(x(1)) = {genus_x1(params)}")
    print(f"g(x(n)) = {rep.g_xn}")
    print(f"eta case: {rep.eta_case} (eta = {rep.eta})")
    print(f"closed form: g = {rep.closed_form}")
    print(f"Riemann-Hurwitz: g = {rep.riemann_hurwitz}  (cusp sum {rep.cusp_sum}, elliptic sum {rep.elliptic_sum})")
    print(f"g(x0(n)) = {rep.g_x0n}")
    return EXIT_OK


def cmd_supersingular(args) -> int:
    params, _ = load_config(args.config)
    c = supersingular_count(params)
    print(f"h1(P) = {c.h1}")
    print(f"h2(P) = {c.h2}")
    print(f"N = {c.N}")
    print(f"per component = {c.per_component}")
    return EXIT_OK


def cmd_bound(args) -> int:
    params, _ = load_config(args.config)
    n = parse_ideal(args, params)
    print(COPRIME_BANNER)
    lim = asymptotic_limit(params)
    g = genus_x0n(params, n).g_x0n
    lb = n1_lower_bound(params, n)
    print(f"field size = {lim.field_size}")
    print(f"g(x0(n)) = {g}")
    print(f"N1 lower bound = {lb}")
    print(f"Hasse-Weil bound = {hasse_weil(lim.field_size, g)}")
    if g:
        r = Fraction(lb, g)
        print(f"ratio N1/g = {r.numerator}/{r.denominator} ~ {float(r):.4f}")
    return EXIT_OK


def cmd_limit(args) -> int:
    params, _ = load_config(args.config)
    lim = asymptotic_limit(params)
    p, e = params.q, 1
    while p ** e < lim.field_size:
        e += 1
    field = f"{p}^{e}" if p ** e == lim.field_size else str(lim.field_size)
    print(f"field = {field}")
    print(f"limit = {lim.limit}")
    print(f"optimal = {'yes' if lim.is_optimal else 'no'}")
    print(f"Drinfeld-Vladut bound = {dv_bound(lim.field_size):g}")
    return EXIT_OK


def first_difference(a: MultiPoly, b: MultiPoly) -> tuple | None:
    """(monomial, coefficient in a, coefficient in b) for the first differing term."""
    for mono in sorted(set(a.terms) | set(b.terms), reverse=True):
        ca, cb = a.terms.get(mono, 0), b.terms.get(mono, 0)
        if ca != cb:
            return mono, ca, cb
    return None


def _mono_text(vars, mono) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(vars, mono) if e]
    return "*".join(parts) or "1"


def cmd_derive_f(args) -> int:
    rep = derive_f_report(conjugate=args.conjugate, seed=args.seed)
    f = rep.f
    shown = galois_conjugate(f) if args.conjugate else f
    print(f"seed = {args.seed}; y choice = {'conjugate' if args.conjugate else 'direct'}")
    print(f"terms = {len(f.terms)}; degree in h2 = {f.degree('h2')}, in h3 = {f.degree('h3')}")
    print(f"elapsed = {rep.seconds:.1f} s")
    if args.emit:
        print(to_text(shown))
    if not args.check:
        return EXIT_OK
    if args.fixture:
        fixture = parse_fixture(Path(args.fixture).read_text())
    else:
        fixture = load_fixture("f.txt")
    if fixture.vars != shown.vars:
        fixture = fixture.recast(shown.vars)
    diff = first_difference(shown, fixture)
    if diff is None:
        print("MATCH" + (" (after Galois conjugation a -> a^4)" if args.conjugate else ""))
        return EXIT_OK
    mono, c1, c2 = diff
    syn = xy_syntax()
    print(f"MISMATCH at {_mono_text(shown.vars, mono)}: derived {syn.coeff_text(c1) if c1 else 0}, "
          f"fixture {syn.coeff_text(c2) if c2 else 0}")
    return EXIT_MISMATCH


def cmd_tower_factor(args) -> int:
    if args.level < 2:
        raise InputError("tower factor needs --level >= 2")
    st = TowerState(seed=args.seed)
    rec = st.factor(args.level)
    phi = "Phi1" if rec.parity == 1 else "Phi2"
    print(f"level {rec.k}: {phi}(u{rec.k - 1}, X) = (X - rho_{rec.k}) * Q_{rec.k}(X)")
    print(f"rho_{rec.k} = {rec.rho_text()}")
    print(f"Q_{rec.k} = {rec.q_text()}")
    print(f"ansatz degree = {rec.ansatz_degree}; samples = {rec.samples}; seed = {args.seed}")
    if rec.irreducible_witness is not None:
        print(f"Q_{rec.k} has no root at the specialization {list(rec.irreducible_witness)} over F_2^16")
    if args.emit == "canonical-text":
        print(json.dumps({"level": rec.k, "rho": rec.rho_text(), "Q": rec.q_text()}, indent=2))
    print("verified exact" if rec.verified else "NOT verified")
    return EXIT_OK if rec.verified else EXIT_INTERNAL


def cmd_tower_count(args) -> int:
    st = TowerState(seed=args.seed)
    reports = count_points(st, args.max_level, args.mode, jobs=args.jobs)
    rows = [r.to_dict() for r in reports]
    emit(render(rows, _fmt(args, {}, args.out)), args.out)
    return EXIT_OK


def cmd_tower_table(args) -> int:
    st = TowerState(seed=args.seed)
    reports = count_points(st, args.max_level, args.mode, jobs=args.jobs)
    rows = [{"k": r.k, "N_k": r.N, "g_k": r.g, "ratio": r.ratio, "n1_lb": r.n1_lb,
             "hasse_weil": r.hasse_weil} for r in ratio_table(reports)]
    emit(render(rows, _fmt(args, {}, args.out)), args.out)
    if args.max_level >= 4:
        stab = stabilization_report(st, args.max_level)
        for k, k2, a, b in stab.pairs:
            print(f"stabilization: rho_{k} {'=' if a else '!='} rho_{k2}, Q_{k} {'=' if b else '!='} Q_{k2}")
    return EXIT_OK


def cmd_table(args) -> int:
    """Formula-only table (k, genus, n1_lb, ratio, hasse_weil) for n = p^k."""
    params, options = load_config(args.config)
    rows = [{"k": r.k, "genus": r.genus, "n1_lb": r.n1_lb, "ratio": r.ratio, "hasse_weil": r.hasse_weil}
            for r in ratio_rows(params, range(1, args.max_k + 1))]
    emit(render(rows, _fmt(args, options, args.out)), args.out)
    return EXIT_OK


# parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinfeld-tower", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def cfg(p, ideal=False):
        p.add_argument("--config", required=True, help="ring config JSON (bundled: sec6.json, elliptic.json)")
        if ideal:
            p.add_argument("--ideal", help="prime factorization data d1^r1,d2^r2,...")
            p.add_argument("--ideal-poly", help="monic generator, coefficients constant-first, comma-separated")

    p = sub.add_parser("genus", help="genus of x0(n) by both routes")
    cfg(p, True)
    p.set_defaults(func=cmd_genus)
    p = sub.add_parser("supersingular", help="supersingular point count N(P)")
    cfg(p)
    p.set_defaults(func=cmd_supersingular)
    p = sub.add_parser("bound", help="N1 lower bound, genus and Hasse-Weil bound")
    cfg(p, True)
    p.set_defaults(func=cmd_bound)
    p = sub.add_parser("limit", help="asymptotic limit of the tower x0(p^k)")
    cfg(p)
    p.set_defaults(func=cmd_limit)
    p = sub.add_parser("table", help="formula table over n = p^k")
    cfg(p)
    p.add_argument("--max-k", type=int, default=5)
    p.add_argument("--format", choices=("json", "csv", "md"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("derive-f", help="derive f(h2, h3) from the symbolic module")
    p.add_argument("--check", action="store_true", help="compare with the bundled fixture")
    p.add_argument("--conjugate", action="store_true", help="use the other root y (compare after a -> a^4)")
    p.add_argument("--fixture", help="compare with this fixture file instead")
    p.add_argument("--emit", action="store_true", help="print the polynomial in canonical text")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_derive_f)

    tw = sub.add_parser("tower", help="the explicit tower over F_16").add_subparsers(dest="tower_command", required=True)
    p = tw.add_parser("factor", help="rho_k and Q_k at one level")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--emit", choices=("canonical-text",))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tower_factor)
    for name, fn in (("count", cmd_tower_count), ("table", cmd_tower_table)):
        p = tw.add_parser(name, help=f"point {name} over F_256")
        p.add_argument("--max-level", type=int, required=True)
        p.add_argument("--mode", choices=("strict", "fiber"), default="strict")
        p.add_argument("--format", choices=("json", "csv", "md"))
        p.add_argument("--out")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=fn)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_level", 0) is not None and getattr(args, "max_level", 0) < 0:
        print("error: --max-level must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ConsistencyError, DerivationError, TowerError, FixtureChecksumError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, UnitIdealError, FormulaError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
