"""Command line entry point: ``veronese-lab gb | chow | run``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chow
from .errors import VeroneseLabError
from .fields import DEFAULT_PRIME
from .ideals import DEFAULT_DEGREE_CAP, DEFAULT_EXT_CAP, DEFAULT_RETRIES, groebner_basis
from .polynomials import MonomialOrder, format_poly, parse_polys, parse_ring_header

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_SEEDS = (0, 1, 2, 3, 4)
RUN_KEYS = {
    "field": int,
    "ext_cap": int,
    "seed": int,
    "trials": int,
    "retries": int,
    "degree_cap": int,
    "out": str,
    "report": str,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="veronese-lab", description="Exact computations with Veronese surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    gb = sub.add_parser("gb", help="reduced Groebner basis of the polynomials in a file")
    gb.add_argument("file", help="file with a 'ring ... over ...' header and one polynomial per line ('-' for stdin)")
    gb.add_argument("--order", default="grevlex", help="grevlex, lex or block:K (default grevlex)")

    ch = sub.add_parser("chow", help="evaluate a top-degree product in a builtin intersection ring")
    ch.add_argument("ambient", nargs="?", help=", ".join(chow.BUILTIN))
    ch.add_argument("expr", nargs="?", help='expression such as "(3a+b)*(a+3b)"')
    ch.add_argument("--list", action="store_true", help="list the builtin rings and their tables")

    run = sub.add_parser("run", help="run scenarios S1..S11 or all")
    run.add_argument("scenario", help="S1..S11 or all")
    run.add_argument("--field", type=int, help=f"prime p (default {DEFAULT_PRIME})")
    run.add_argument("--ext-cap", dest="ext_cap", type=int, help=f"largest splitting-field degree (default {DEFAULT_EXT_CAP})")
    run.add_argument("--seed", type=int, help="single seed (default: seeds 0..4)")
    run.add_argument("--trials", type=int, help="number of S10 trials (default 100)")
    run.add_argument("--retries", type=int, help=f"resample budget (default {DEFAULT_RETRIES})")
    run.add_argument("--degree-cap", dest="degree_cap", type=int, help=f"Hilbert regularity cap (default {DEFAULT_DEGREE_CAP})")
    run.add_argument("--out", choices=("text", "json"), help="output format (default text)")
    run.add_argument("--report", help="write a JSON report here, with PNG charts beside it")
    run.add_argument("--config", help="TOML file with any of the keys above; flags win")
    return parser


def cmd_gb(args) -> int:
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    lines = [ln for ln in text.splitlines() if ln.split("#", 1)[0].strip()]
    if not lines:
        raise VeroneseLabError("empty input")
    ring = parse_ring_header(lines[0]).with_order(MonomialOrder.parse(args.order))
    polys = parse_polys(ring, "\n".join(lines[1:]))
    # the output is itself valid input
    print(ring.header())
    print(f"# reduced Groebner basis, order {args.order}")
    for g in groebner_basis(polys, ring.order):
        print(format_poly(g))
    return 0


def cmd_chow(args) -> int:
    if args.list:
        print("\n\n".join(a.describe() for a in chow.BUILTIN.values()))
        return 0
    if not args.ambient or not args.expr:
        raise VeroneseLabError("usage: veronese-lab chow <ambient> \"<expr>\" | chow --list")
    print(chow.evaluate_expression(chow.get_ambient(args.ambient), args.expr))
    return 0


def load_config(path) -> dict:
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    out = {}
    for key, value in raw.items():
        key = key.replace("-", "_")
        if key not in RUN_KEYS:
            raise VeroneseLabError(f"unknown config key {key!r}")
        out[key] = RUN_KEYS[key](value)
    return out


def run_settings(args) -> dict:
    settings = {"field": DEFAULT_PRIME, "ext_cap": DEFAULT_EXT_CAP, "retries": DEFAULT_RETRIES,
                "degree_cap": DEFAULT_DEGREE_CAP, "trials": 100, "out": "text", "report": None, "seed": None}
    if args.config:
        settings.update(load_config(args.config))
    for key in RUN_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def cmd_run(args) -> int:
    from .scenarios import SCENARIOS, ScenarioConfig, run_scenario

    s = run_settings(args)
    ids = list(SCENARIOS) if args.scenario.lower() == "all" else [args.scenario.upper()]
    seeds = DEFAULT_SEEDS if s["seed"] is None else (s["seed"],)
    reports = []
    for sid in ids:
        for seed in seeds:
            cfg = ScenarioConfig(sid, p=s["field"], seed=seed, ext_cap=s["ext_cap"], retries=s["retries"],
                                 degree_cap=s["degree_cap"], trials=s["trials"])
            report = run_scenario(cfg)
            reports.append(report)
            if s["out"] == "text":
                print(report.to_text(), flush=True)
    if s["out"] == "json":
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        print(json.dumps(payload, default=str))
    if s["report"]:
        from .report import write_report

        for p in write_report(reports, s["report"]):
            print(f"wrote {p}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"gb": cmd_gb, "chow": cmd_chow, "run": cmd_run}[args.command]
    try:
        return handler(args)
    except (VeroneseLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
