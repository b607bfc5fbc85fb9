"""Command-line front end.

Exit codes: 0 on success or agreement, 1 on a mathematical discrepancy (or an
oracle that cannot decide), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from lefschetz import analyzer, gtpatterns, oracle, regression, surface
from lefschetz.exactcore import binom
from lefschetz.hilbert import AlgebraSpec, ci_hf, stanley_hf

SCHEMA = 1
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: AlgebraSpec | None
    oracle: oracle.OracleConfig
    max_degree: int | None
    fmt: str


# ---------------------------------------------------------------------------
# argument handling


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(p: argparse.ArgumentParser, algebra: bool = True) -> None:
    if algebra:
        p.add_argument("-r", type=int, help="number of variables")
        p.add_argument("-n", type=int, help="number of linear forms")
        p.add_argument("-t", type=int, help="common exponent")
        p.add_argument("--exponents", type=_int_list, help="per-form exponents, e.g. 3,3,4")
        p.add_argument("--max-degree", type=int)
    p.add_argument("--prime", type=int, help="field characteristic (env LEFSCHETZ_PRIME)")
    p.add_argument("--seed", type=int, help="random seed (env LEFSCHETZ_SEED)")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--jobs", type=int)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lefschetz",
                                     description="Weak Lefschetz checks for ideals of powers of linear forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hf", help="Hilbert function, closed form next to the oracle")
    _common(p)
    p.add_argument("--from", dest="lo", type=int, default=0)
    p.add_argument("--to", dest="hi", type=int)

    p = sub.add_parser("wlp", help="symbolic verdict cross-checked against the oracle")
    _common(p)

    p = sub.add_parser("surface", help="blowups of P^2 at general points")
    ssub = p.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("curves", help="list the (-1)-curves")
    q.add_argument("-n", type=int, required=True)
    _common(q, algebra=False)
    q = ssub.add_parser("irregular", help="whether d*E0 - m*sum E_i has h^1 > 0")
    for flag in ("-n", "-d", "-m"):
        q.add_argument(flag, type=int, required=True)
    _common(q, algebra=False)
    q = ssub.add_parser("worst", help="minimum of E.D'_m over the (-1)-curves")
    for flag in ("-n", "-t"):
        q.add_argument(flag, type=int, required=True)
    q.add_argument("-m", type=int, help="degree (default: the injectivity bound)")
    _common(q, algebra=False)
    q = ssub.add_parser("bound", help="injectivity bound for n t-th powers in four variables")
    for flag in ("-n", "-t"):
        q.add_argument(flag, type=int, required=True)
    _common(q, algebra=False)

    p = sub.add_parser("gt", help="Gelfand-Tsetlin pattern counts")
    gsub = p.add_subparsers(dest="action", required=True)
    q = gsub.add_parser("count", help="pattern counts per convention")
    for flag in ("-r", "-t", "-i"):
        q.add_argument(flag, type=int, required=True)
    _common(q, algebra=False)
    q = gsub.add_parser("resolve", help="find the convention matching the Hilbert function")
    q.add_argument("--grid", required=True, help="cells r:t separated by commas, e.g. 2:2,3:2")
    _common(q, algebra=False)

    p = sub.add_parser("oracle", help="raw oracle queries")
    osub = p.add_subparsers(dest="action", required=True)
    for name in ("rank", "ideal-dim"):
        q = osub.add_parser(name)
        _common(q)
        q.add_argument("-j", type=int, required=True, help="degree")
    q = osub.add_parser("socle")
    _common(q)
    q = osub.add_parser("fatpoints", help="h^0 and h^1 of fat points in P^(r-1)")
    q.add_argument("-r", type=int, required=True)
    q.add_argument("-j", type=int, required=True, help="degree")
    q.add_argument("--mults", type=_int_list, required=True, help="multiplicities, e.g. 2,2,2,2,2")
    _common(q, algebra=False)

    p = sub.add_parser("verify-paper", help="recompute the published examples")
    p.add_argument("--only", action="append", help="group to run (repeatable or comma-separated)")
    p.add_argument("--strict", action="store_true", help="count documented errata as failures")
    _common(p, algebra=False)
    return parser


def _oracle_config(args) -> oracle.OracleConfig:
    prime = args.prime if args.prime is not None else _env_int("LEFSCHETZ_PRIME", oracle.DEFAULT_PRIME)
    seed = args.seed if args.seed is not None else _env_int("LEFSCHETZ_SEED", 0)
    try:
        return oracle.OracleConfig(prime=prime, seed=seed, trials=args.trials, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _spec(args) -> AlgebraSpec:
    r, n = args.r, args.n
    if r is None:
        raise UsageError("-r is required")
    if args.exponents:
        if n is not None and n != len(args.exponents):
            raise UsageError(f"-n {n} disagrees with {len(args.exponents)} exponents")
        exps = tuple(args.exponents)
    else:
        if n is None or args.t is None:
            raise UsageError("give -n and -t, or --exponents")
        exps = (args.t,) * n
    try:
        return AlgebraSpec(r, len(exps), exps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# output


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# ---------------------------------------------------------------------------
# hf


def formula_value(spec: AlgebraSpec, j: int) -> int | None:
    """Closed-form ``dim A_j`` when one is available, else None."""
    r, t = spec.r, spec.t
    if j < min(spec.exponents):
        return binom(r - 1 + j, r - 1)
    if t is None:
        return None
    if spec.n == spec.r + 1:
        return stanley_hf(r, t, j)
    if spec.n == spec.r:
        return ci_hf(r, t)[j]
    return None


def hf_rows(spec: AlgebraSpec, hf, lo: int, hi: int) -> list[dict]:
    rows = []
    for j in range(lo, hi + 1):
        f = formula_value(spec, j)
        rows.append({"degree": j, "formula": f, "oracle": hf[j], "agree": None if f is None else f == hf[j]})
    return rows


def hf_document(spec: AlgebraSpec, rows: list[dict]) -> dict:
    return {
        "schema": SCHEMA,
        "spec": {"r": spec.r, "n": spec.n, "exponents": list(spec.exponents)},
        "rows": rows,
        "agreement": all(row["agree"] is not False for row in rows),
    }


def cmd_hf(args) -> int:
    spec = _spec(args)
    cfg = _oracle_config(args)
    if args.lo < 0 or (args.hi is not None and args.hi < args.lo):
        raise UsageError("need 0 <= --from <= --to")
    limit = args.max_degree
    if args.hi is not None:
        limit = args.hi if limit is None else min(limit, args.hi)
    hf = oracle.algebra_hf(spec, cfg, max_degree=limit)
    hi = args.hi if args.hi is not None else max(len(hf) - 1, args.lo)
    rows = hf_rows(spec, hf, args.lo, hi)
    doc = hf_document(spec, rows)
    if args.format == "json":
        _emit(args, _json(doc))
    elif args.format == "csv":
        _emit(args, _csv(("degree", "formula", "oracle", "agree"),
                         [[_cell(row[k]) for k in ("degree", "formula", "oracle", "agree")] for row in rows]))
    else:
        lines = [f"# {spec.label()}  prime={cfg.prime} seed={cfg.seed} trials={cfg.trials}",
                 f"{'degree':>6}  {'formula':>10}  {'oracle':>10}  agree"]
        for row in rows:
            f = "-" if row["formula"] is None else row["formula"]
            a = "-" if row["agree"] is None else ("yes" if row["agree"] else "NO")
            lines.append(f"{row['degree']:>6}  {f:>10}  {row['oracle']:>10}  {a}")
        lines.append("agreement" if doc["agreement"] else "MISMATCH")
        _emit(args, "\n".join(lines))
    return 0 if doc["agreement"] else 1


# ---------------------------------------------------------------------------
# wlp


def render_report(report: analyzer.WlpReport, fmt: str) -> str:
    if fmt == "json":
        return _json(report.to_dict())
    if fmt == "csv":
        return _csv(("j", "dim_source", "dim_target", "rank", "injective", "surjective"),
                    [[e.j, e.dim_source, e.dim_target, e.rank, _cell(e.injective), _cell(e.surjective)]
                     for e in report.entries])
    lines = [
        f"# {report.spec.label()}",
        f"symbolic: {report.symbolic}" + (f"  ({report.symbolic.cause})" if report.symbolic.cause else ""),
        f"oracle:   {report.oracle}" + (f"  ({report.oracle.cause})" if report.oracle.cause else ""),
        f"citations: {', '.join(report.citations) if report.citations else '-'}",
        f"agreement: {'yes' if report.agreement else 'NO'}",
    ]
    if report.entries:
        lines.append(f"{'j':>4} {'dim A_j':>9} {'dim A_j+1':>9} {'rank':>9}  status")
        for e in report.entries:
            status = "ok" if e.full_rank else "NOT FULL RANK"
            lines.append(f"{e.j:>4} {e.dim_source:>9} {e.dim_target:>9} {e.rank:>9}  {status}")
    lines.extend(f"note: {d}" for d in report.diagnostics)
    return "\n".join(lines)


def cmd_wlp(args) -> int:
    spec = _spec(args)
    report = analyzer.cross_check(spec, _oracle_config(args))
    _emit(args, render_report(report, args.format))
    return 0 if report.agreement else 1


# ---------------------------------------------------------------------------
# surface


def _fat_h1(n: int, d: int, m: int, cfg: oracle.OracleConfig) -> int:
    return oracle.fatpoint_h0h1(3, d, [m] * n, cfg)[1]


def cmd_surface(args) -> int:
    cfg = _oracle_config(args)
    try:
        if args.action == "curves":
            curves = surface.minus_one_curves(args.n)
            payload = [{"d": e.d, "b": list(e.b)} for e in curves]
            lines = [str(e) for e in curves]
        elif args.action == "irregular":
            try:
                value = surface.uniform_irregular(args.n, args.d, args.m)
                how = "curve"
            except NotImplementedError:
                if args.d < 0 or args.m < 0:
                    raise UsageError("need d, m >= 0") from None
                value = _fat_h1(args.n, args.d, args.m, cfg) > 0
                how = "oracle"
            payload = {"n": args.n, "d": args.d, "m": args.m, "irregular": value, "method": how}
            lines = [f"{_cell(value)} ({how})"]
        elif args.action == "worst":
            m = args.m if args.m is not None else surface.injectivity_bound(args.n, args.t)
            value = surface.worst_curve_value(args.n, args.t, m)
            curve = surface.worst_curve(args.n, args.t, m)
            payload = {"n": args.n, "t": args.t, "m": m, "value": value, "curve": str(curve)}
            lines = [f"{value} at m={m} via {curve}"]
        else:
            bound = surface.injectivity_bound(args.n, args.t)
            payload = {"n": args.n, "t": args.t, "bound": bound}
            lines = [str(bound)]
    except (ValueError, NotImplementedError) as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit(args, _json({"schema": SCHEMA, "result": payload}))
    else:
        _emit(args, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# gt


def _grid(text: str) -> list[tuple[int, int]]:
    cells = []
    for part in text.split(","):
        try:
            r, t = part.split(":")
            cells.append((int(r), int(t)))
        except ValueError:
            raise UsageError(f"bad grid cell {part!r}; expected r:t") from None
    if not cells:
        raise UsageError("empty grid")
    return cells


def cmd_gt(args) -> int:
    if args.action == "count":
        try:
            counts = {str(c): gtpatterns.count(gtpatterns.GTQuery.uniform(args.r, args.t, args.i, c))
                      for c in gtpatterns.Convention}
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        expected = stanley_hf(args.r, args.t, args.i)
        if args.format == "json":
            _emit(args, _json({"schema": SCHEMA, "r": args.r, "t": args.t, "i": args.i,
                               "counts": counts, "hilbert": expected}))
        else:
            lines = [f"{name:20s} {value}" for name, value in counts.items()]
            lines.append(f"{'hilbert function':20s} {expected}")
            _emit(args, "\n".join(lines))
        return 0

    result = gtpatterns.resolve_convention(_grid(args.grid))
    if isinstance(result, gtpatterns.Convention):
        payload = {"convention": str(result), "first_failure": {}}
        lines = [f"convention: {result}"]
    else:
        failures = {}
        lines = ["Discrepancy: no single convention matches the Hilbert function"]
        for conv, m in result.first_failure.items():
            if m is None:
                failures[str(conv)] = None
                lines.append(f"  {conv}: matches")
            else:
                failures[str(conv)] = {"r": m.r, "t": m.t, "i": m.i, "count": m.count, "expected": m.expected}
                lines.append(f"  {conv}: first mismatch at (r={m.r}, t={m.t}, i={m.i}): "
                             f"count {m.count} != {m.expected}")
        payload = {"convention": None, "first_failure": failures}
    if args.format == "json":
        _emit(args, _json({"schema": SCHEMA, **payload}))
    else:
        _emit(args, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# oracle


def cmd_oracle(args) -> int:
    cfg = _oracle_config(args)
    if args.action == "fatpoints":
        try:
            h0, h1 = oracle.fatpoint_h0h1(args.r, args.j, args.mults, cfg)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload = {"h0": h0, "h1": h1}
        text = f"h0={h0} h1={h1}"
    else:
        spec = _spec(args)
        if args.action == "rank":
            value = oracle.mult_map_rank(spec, cfg, args.j)
        elif args.action == "ideal-dim":
            value = oracle.ideal_dim(spec, cfg, args.j)
        else:
            value = oracle.socle_degree_oracle(spec, cfg)
        payload = {args.action.replace("-", "_"): value}
        text = str(value)
    if args.format == "json":
        _emit(args, _json({"schema": SCHEMA, **payload}))
    else:
        _emit(args, text)
    return 0


# ---------------------------------------------------------------------------
# verify-paper


def cmd_verify_paper(args) -> int:
    cfg = _oracle_config(args)
    only = None
    if args.only:
        only = sorted({g.strip() for chunk in args.only for g in chunk.split(",") if g.strip()})
    try:
        outcomes = regression.run(cfg, only)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    tally = {s: sum(o.status == s for o in outcomes) for s in (regression.PASS, regression.ERRATUM, regression.FAIL)}
    bad = tally[regression.FAIL] + (tally[regression.ERRATUM] if args.strict else 0)
    if args.format == "json":
        _emit(args, _json({
            "schema": SCHEMA,
            "items": [{"group": o.item.group, "name": o.item.name, "status": o.status, "detail": o.detail}
                      for o in outcomes],
            "summary": tally,
        }))
    elif args.format == "csv":
        _emit(args, _csv(("group", "name", "status", "detail"),
                         [[o.item.group, o.item.name, o.status, o.detail] for o in outcomes]))
    else:
        lines = [o.line() for o in outcomes]
        lines.append(f"{len(outcomes)} items: {tally['pass']} pass, {tally['erratum']} erratum, {tally['fail']} fail")
        _emit(args, "\n".join(lines))
    return 1 if bad else 0


# ---------------------------------------------------------------------------


_COMMANDS = {
    "hf": cmd_hf,
    "wlp": cmd_wlp,
    "surface": cmd_surface,
    "gt": cmd_gt,
    "oracle": cmd_oracle,
    "verify-paper": cmd_verify_paper,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"lefschetz: error: {exc}", file=sys.stderr)
        return 2
    except (oracle.OutOfDeskScale, oracle.InconclusiveError) as exc:
        print(f"lefschetz: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
