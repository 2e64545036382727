"""Command line entry point: ``sphyper <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from .construct import PolyPair, enumerate_pairs, parse_pair
from .pipeline import PipelineConfig, RowReport, analyze, check_report, sweep, write_csv
from .linalg import RatMatrix
from .words import express, export_words


def _config(args) -> PipelineConfig:
    cfg = PipelineConfig.from_file(args.config) if getattr(args, "config", None) else PipelineConfig()
    d = asdict(cfg)
    for key in ("degree", "seed", "workers", "out", "candidates"):
        v = getattr(args, key, None)
        if v is not None:
            d[key] = v
    if getattr(args, "ordered", None) is not None:
        d["ordered"] = args.ordered
    return PipelineConfig(**d).with_env()


def cmd_enumerate(args) -> int:
    pairs = enumerate_pairs(args.degree, ordered=args.ordered)
    for p in pairs:
        print(f"{p.nr}\t{p.canonical()}\t{p.coeff}")
    print(f"# {len(pairs)} pairs", file=sys.stderr)
    return 0


def cmd_analyze(args) -> int:
    pair = parse_pair(args.pair)
    sides = {pair.f_indices, pair.g_indices}
    match = next((p for p in enumerate_pairs(pair.n) if {p.f_indices, p.g_indices} == sides), None)
    if match is not None:
        pair = PolyPair(pair.f_indices, pair.g_indices, nr=match.nr)
    rep = analyze(pair, _config(args))
    if args.json:
        print(rep.to_json())
    else:
        for k, v in rep.csv_row().items():
            print(f"{k:7s} {v}")
    if args.out:
        Path(args.out).write_text(rep.to_json())
    return 0 if rep.overall == "ok" else 1


def cmd_sweep(args) -> int:
    cfg = _config(args)
    reports, summary = sweep(args.degree, cfg)
    if not cfg.out:
        write_csv(reports, "/dev/stdout")
    print(json.dumps(asdict(summary), indent=1), file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    rep = RowReport.from_json(Path(args.row).read_text())
    problems = check_report(rep)
    if not args.no_recompute:
        fresh = analyze(parse_pair(rep.pair), _config(args))
        fresh.nr = rep.nr
        for key in ("ilevel", "iindex", "Pi", "coeff", "sv_arithmetic", "dense", "int_index"):
            if getattr(fresh, key) != getattr(rep, key):
                problems.append(f"{key}: stored {getattr(rep, key)!r}, recomputed {getattr(fresh, key)!r}")
    for p in problems:
        print(p)
    print("ok" if not problems else f"{len(problems)} problem(s)")
    return 0 if not problems else 1


def cmd_export_words(args) -> int:
    rep = RowReport.from_json(Path(args.row).read_text())
    if not rep.lz_generators:
        print("report carries no integer-point generators", file=sys.stderr)
        return 1
    words = [express(RatMatrix(g, den=1)) for g in rep.lz_generators]
    text = export_words(words)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sphyper", description="Arithmeticity data for symplectic hypergeometric groups")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list admissible pairs of a degree")
    p.add_argument("--degree", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ordered", dest="ordered", action="store_true")
    g.add_argument("--unordered", dest="ordered", action="store_false")
    p.set_defaults(func=cmd_enumerate, ordered=False)

    p = sub.add_parser("analyze", help="run the pipeline on one pair")
    p.add_argument("--pair", required=True, help='e.g. "C1^6 | C14"')
    p.add_argument("--seed", type=int)
    p.add_argument("--candidates", type=int)
    p.add_argument("--config")
    p.add_argument("--json", action="store_true", help="print the full report")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="analyze every pair of a degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--config")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ordered", dest="ordered", action="store_true", default=None)
    g.add_argument("--unordered", dest="ordered", action="store_false")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="re-check a stored row report")
    p.add_argument("--row", required=True)
    p.add_argument("--config")
    p.add_argument("--no-recompute", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-words", help="write integer-point generators as words in Sp(n, Z)")
    p.add_argument("--row", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_words)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
