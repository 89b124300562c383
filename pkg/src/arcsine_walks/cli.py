"""Command-line front end.

Every invocation prints one JSON object (default) or a CSV table with a
header row.  Exact rationals are rendered as ``"p/q"`` strings, floats as
their shortest round-trip ``repr``.

Exit codes: 0 ok, 2 mismatch (an exact verification failed), 1 error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb

from . import combinatorics as cb
from .geometry import GeneralPositionError, UnsupportedSizeError
from .montecarlo import empirical_distribution_of_m, monte_carlo_expected_m
from .walks import SAMPLER_KINDS, sample_bridge, sample_walk
from .weyl import (
    DegenerateNormalError,
    average_trivial_faces_A,
    average_trivial_faces_B,
    bridge_face_equivalence,
    corollary_vertex_distribution,
    random_gp_subspace,
    walk_face_equivalence,
)

EXACT_WHAT = ("walk", "bridge", "containing", "nonabsorb-walk", "nonabsorb-bridge",
              "arcsine-pmf", "uniform-pmf", "limit-moment")
MC_WHAT = ("walk", "bridge", "compare")
VERIFY_WHAT = ("weyl-b", "weyl-a", "lemma-walk", "lemma-bridge", "corollary")
DIST_CHOICES = SAMPLER_KINDS


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def render(value, decimal_digits=None):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        # json.dumps and csv both write floats via repr (shortest round-trip)
        return value
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if isinstance(value, dict):
        return {str(k): render(v) for k, v in value.items()}
    return value


def to_decimal(value: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(digits + 30, 50)
        q = Decimal(value.numerator) / Decimal(value.denominator)
        return str(q.quantize(Decimal(1).scaleb(-digits)))


def _add_decimals(row: dict, digits) -> dict:
    if digits is None:
        return row
    out = {}
    for key, val in row.items():
        out[key] = val
        if isinstance(val, Fraction):
            out[f"{key}_decimal"] = to_decimal(val, digits)
    return out


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for this command")


def _range(text: str) -> list[int]:
    out = []
    for part in str(text).split(","):
        if ":" in part:
            a, b = part.split(":")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


# each handler returns (result payload, csv rows, status)

def cmd_exact(args):
    what = args.what
    if what in ("walk", "bridge", "containing"):
        _need(args, "n", "k", "d")
        fn = {"walk": cb.expected_m_walk, "bridge": cb.expected_m_bridge,
              "containing": cb.expected_containing_count}[what]
        value = fn(args.n, args.k, args.d)
        row = {"n": args.n, "k": args.k, "d": args.d, "value": value}
        return {"value": value}, [row], "ok"
    if what in ("nonabsorb-walk", "nonabsorb-bridge"):
        _need(args, "n", "d")
        fn = cb.nonabsorption_walk if what == "nonabsorb-walk" else cb.nonabsorption_bridge
        value = fn(args.n, args.d)
        return {"value": value}, [{"n": args.n, "d": args.d, "value": value}], "ok"
    if what in ("arcsine-pmf", "uniform-pmf"):
        _need(args, "n")
        pmf = cb.arcsine_pmf(args.n) if what == "arcsine-pmf" else cb.uniform_bridge_pmf(args.n)
        return {"pmf": pmf}, [{"m": m, "probability": p} for m, p in enumerate(pmf)], "ok"
    if what == "limit-moment":
        _need(args, "k", "d")
        fn = cb.limit_moment_bridge if args.bridge else cb.limit_moment_walk
        value = fn(args.k, args.d)
        return {"value": value}, [{"k": args.k, "d": args.d, "value": value}], "ok"
    raise UsageError(f"unknown exact target {what!r}")


def _dists(args) -> list[str]:
    names = []
    for item in args.dist or ["gaussian"]:
        names.extend(s for s in item.split(",") if s)
    return names


def cmd_mc(args):
    _need(args, "n", "k", "d")
    trials = args.trials or 10000
    if args.what in ("walk", "bridge"):
        bridge = args.what == "bridge"
        dist = _dists(args)[0]
        est = monte_carlo_expected_m(args.n, args.k, args.d, dist, trials, args.seed, args.workers, bridge)
        exact = (cb.expected_m_bridge if bridge else cb.expected_m_walk)(args.n, args.k, args.d)
        z = est.z_score(exact)
        result = {
            "mean": est.mean, "std_error": est.std_error, "trials": est.trials, "seed": est.seed,
            "target": est.target, "exact": exact, "z_score": z, "within_4se": abs(z) <= 4,
        }
        row = {"n": args.n, "k": args.k, "d": args.d, "dist": dist, **result}
        return result, [row], "ok"
    dists = _dists(args)
    if len(dists) < 2:
        raise UsageError("mc compare needs at least two --dist values")
    hists, distances = empirical_distribution_of_m(
        args.n, args.k, args.d, dists, trials, args.seed, args.workers, args.bridge)
    result = {
        "histograms": {h.sampler if dists.count(h.sampler) == 1 else f"{h.sampler}#{i}": list(h.counts)
                       for i, h in enumerate(hists)},
        "total_variation": [
            {"a": hists[i].sampler, "b": hists[j].sampler, "distance": float(tv)}
            for (i, j), tv in distances.items()
        ],
        "trials": trials,
        "seed": args.seed,
    }
    rows = []
    for i, h in enumerate(hists):
        for value, count in enumerate(h.counts):
            rows.append({"sampler": h.sampler, "index": i, "two_m": value, "count": count})
    return result, rows, "ok"


def _face_report(args, arrangement):
    _need(args, "n", "d")
    ks = [args.k] if args.k is not None else list(range(1, args.n + 1))
    subspace = random_gp_subspace(args.n, args.d, arrangement, args.seed)
    fn = average_trivial_faces_B if arrangement == "B" else average_trivial_faces_A
    reports = []
    for i, k in enumerate(ks):
        # general position was certified when the subspace was drawn
        reports.append(fn(args.n, k, subspace, check_gp=False, workers=args.workers))
    rows = [{"n": r.n, "k": r.k, "d": r.d, "formula": r.formula_value, "exhaustive": r.average_trivial,
             "match": r.match} for r in reports]
    status = "ok" if all(r.match for r in reports) else "mismatch"
    result = {"subspace": subspace.as_lists()}
    if len(reports) == 1:
        result.update({"formula": reports[0].formula_value, "exhaustive": reports[0].average_trivial,
                       "match": reports[0].match})
    else:
        result["faces"] = rows
    return result, rows, status


def _lemma(args, bridge):
    _need(args, "n", "d")
    instances = args.trials or 100
    dist = _dists(args)[0]
    rows = []
    for t in range(instances):
        seed = args.seed * 1_000_003 + t
        if bridge:
            path = sample_bridge(args.n, args.d, dist, seed, exact_bits=20)
            ks = [args.k] if args.k is not None else range(1, args.n)
            fn = bridge_face_equivalence
        else:
            path = sample_walk(args.n, args.d, dist, seed, exact_bits=20)
            ks = [args.k] if args.k is not None else range(1, args.n + 1)
            fn = walk_face_equivalence
        for k in ks:
            res = fn(path.increments.tolist(), k)
            rows.append({"instance": t, "k": k, "absorbed_tuples": res.absorbed_tuples,
                         "nontrivial_faces": res.nontrivial_faces, "equal": res.equal})
    status = "ok" if all(r["equal"] for r in rows) else "mismatch"
    result = {"instances": instances, "checks": len(rows), "all_equal": status == "ok",
              "mismatches": [r for r in rows if not r["equal"]]}
    return result, rows, status


def cmd_verify(args):
    what = args.what
    if what == "weyl-b":
        return _face_report(args, "B")
    if what == "weyl-a":
        return _face_report(args, "A")
    if what == "lemma-walk":
        return _lemma(args, bridge=False)
    if what == "lemma-bridge":
        return _lemma(args, bridge=True)
    _need(args, "n")
    dist = corollary_vertex_distribution(args.n, args.trials or 100000, args.seed)
    result = {"normal": list(dist.normal), "counts": list(dist.counts), "empirical": dist.pmf,
              "arcsine": list(dist.target), "total_variation": dist.tv_distance,
              "trials": dist.trials, "seed": dist.seed}
    rows = [{"m": m, "count": c, "empirical": p, "arcsine": t}
            for m, (c, p, t) in enumerate(zip(dist.counts, dist.pmf, dist.target))]
    return result, rows, "ok"


def cmd_table(args):
    ns = _range(args.n or "1:10")
    ks = _range(args.k or "1:10")
    ds = _range(args.d or "1:3")
    rows = []
    for n in ns:
        for k in ks:
            if k > n:
                continue
            for d in ds:
                rows.append({
                    "n": n, "k": k, "d": d,
                    "walk": cb.expected_m_walk(n, k, d),
                    "containing": cb.expected_containing_count(n, k, d),
                    "bridge": cb.expected_m_bridge(n, k, d) if k < n else "",
                    "tuples": comb(n, k),
                })
    return {"rows": rows}, rows, "ok"


HANDLERS = {"exact": cmd_exact, "mc": cmd_mc, "verify": cmd_verify, "table": cmd_table}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--dist", action="append", help=f"increment law: {', '.join(DIST_CHOICES)}")
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--decimal", type=int, metavar="N", help="add N-digit decimal columns for exact values")
    common.add_argument("--stable", action="store_true", help="omit timing so output is byte-reproducible")
    common.add_argument("--bridge", action="store_true", help="bridge variant (limit-moment, mc compare)")

    parser = _Parser(prog="arcsine-walks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("exact", parents=[common], help="closed-form values")
    p.add_argument("what", choices=EXACT_WHAT)
    p = sub.add_parser("mc", parents=[common], help="Monte Carlo estimates")
    p.add_argument("what", choices=MC_WHAT)
    p = sub.add_parser("verify", parents=[common], help="exhaustive/empirical verifications")
    p.add_argument("what", choices=VERIFY_WHAT)
    p = sub.add_parser("table", help="sweep n, k, d ranges (e.g. --n 1:10) to CSV")
    for flag in ("--n", "--k", "--d"):
        p.add_argument(flag)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--decimal", type=int, metavar="N")
    p.add_argument("--stable", action="store_true")
    return parser


def _emit_csv(rows: list[dict], out) -> None:
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else
                         ("true" if v is True else "false" if v is False else v)
                         for k, v in render(row).items()})


def execute(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    fmt = args.format or ("csv" if args.command == "table" else "json")
    command = args.command + (f" {args.what}" if hasattr(args, "what") else "")
    params = {k: v for k, v in vars(args).items() if k not in ("command", "what", "format", "stable") and v not in (None, False)}
    start = time.perf_counter()
    try:
        result, rows, status = HANDLERS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"arcsine-walks: error: {exc}\n")
        return 1
    except (ValueError, GeneralPositionError, UnsupportedSizeError, DegenerateNormalError) as exc:
        result, rows, status = {"message": str(exc)}, [{"message": str(exc)}], "error"
        sys.stderr.write(f"arcsine-walks: {exc}\n")
    elapsed = (time.perf_counter() - start) * 1000.0

    rows = [_add_decimals(r, args.decimal) for r in rows]
    if isinstance(result, dict):
        result = _add_decimals(result, args.decimal)
        if args.decimal is not None and "rows" in result:
            result["rows"] = rows
    if fmt == "csv":
        _emit_csv(rows, out)
    else:
        payload = {"command": command, "parameters": render(params), "result": render(result), "status": status}
        if not args.stable:
            payload["elapsed_ms"] = round(elapsed, 3)
        out.write(json.dumps(payload) + "\n")
    return {"ok": 0, "mismatch": 2}.get(status, 1)


def main(argv=None) -> None:
    sys.exit(execute(argv))


if __name__ == "__main__":
    main()
