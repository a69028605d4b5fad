"""Command-line front end.

Exit codes: 0 success, 2 usage/configuration, 3 I/O or file format
(including a table failing ``check``), 4 insufficient resources.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import bayes, lzestimator
from .enumeration import (
    ConfigError,
    EnumParams,
    TableFormatError,
    TableInvariantError,
    check_kraft,
    check_records,
    check_witnesses,
    enumerate_programs,
    load,
    prefix_pairs,
    save,
)
from .infotheory import Estimator, info_report
from .predictor import NoSupport, PredictiveModel, report_csv, sequential_report

CACHE_ENV = "AITLAB_CACHE_DIR"
SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_RESOURCES = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _bits(value: str) -> str:
    """Bit-string argument; ``@path`` reads the bits from a file."""
    if value.startswith("@"):
        value = "".join(Path(value[1:]).read_text(encoding="ascii").split())
    if value == "-":
        value = ""
    if set(value) - {"0", "1"}:
        raise argparse.ArgumentTypeError(f"not a bit string: {value!r}")
    return value


def _load_table(path: str, verify: bool = True):
    try:
        return load(path, verify=verify)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read table: {exc}") from None
    except (TableFormatError, TableInvariantError) as exc:
        raise CliError(EXIT_IO, f"{path}: {exc}") from None


def _params_block(p: EnumParams) -> dict:
    return {"L": p.L, "T": p.T, "cond": p.condition, "isa": p.isa_version}


def cmd_enumerate(args) -> int:
    try:
        params = EnumParams(args.L, args.T, args.cond)
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
    except ConfigError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    start = time.perf_counter()
    table = enumerate_programs(params, workers=args.workers)
    elapsed = time.perf_counter() - start
    try:
        save(table, args.out)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {args.out}: {exc}") from None
    print(f"outputs={len(table)} total_mass={table.total_mass} "
          f"({float(table.total_mass):.6f}) wall={elapsed:.2f}s")
    return EXIT_OK


def cmd_info(args) -> int:
    table = _load_table(args.table)
    if args.cond_tables != "auto":
        raise CliError(EXIT_USAGE, "only --cond-tables auto is supported")
    cache_dir = os.environ.get(CACHE_ENV) or Path(args.table).resolve().parent
    est = Estimator(table.params, cache_dir=cache_dir, workers=args.workers, base=table)
    report = info_report(args.x, args.y, est)
    doc = {"schema": SCHEMA_VERSION, **report.to_dict(), "params": _params_block(table.params)}
    doc["masses"] = {
        name: {"exact": str(m), "log2": m.log2() if m else None}
        for name, m in (("m_x", est.mass(args.x)), ("m_y", est.mass(args.y)),
                        ("m_x_given_y", est.mass(args.x, args.y)),
                        ("m_y_given_x", est.mass(args.y, args.x)))
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        for k, v in doc.items():
            print(f"{k}: {v}")
    missing = report.missing()
    if missing:
        raise CliError(EXIT_RESOURCES, "insufficient resources: " + ", ".join(missing))
    return EXIT_OK


def cmd_predict(args) -> int:
    table = _load_table(args.table)
    rows = sequential_report(PredictiveModel(table), args.stream)
    sys.stdout.write(report_csv(rows))
    return EXIT_OK


def cmd_bayes(args) -> int:
    try:
        space = bayes.HypothesisSpace.load(args.space)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read space: {exc}") from None
    except bayes.SpaceError as exc:
        raise CliError(EXIT_IO, f"{args.space}: {exc}") from None
    evidence = [e for e in args.evidence.split(",") if e]
    try:
        results = bayes.sequential_update(space, evidence)
    except bayes.SpaceError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    except bayes.ImpossibleEvidence as exc:
        raise CliError(EXIT_RESOURCES, str(exc)) from None
    doc = {
        "schema": SCHEMA_VERSION,
        "hypotheses": list(space.hypotheses),
        "prior": list(space.prior),
        "steps": [{"evidence": r.evidence, "marginal": r.marginal,
                   "posterior": list(r.posterior), "manifestation": list(r.manifestation)}
                  for r in results],
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_lz(args) -> int:
    if args.lz_cmd == "cost":
        out = {"cost": lzestimator.lz_cost(args.x)}
        if args.y is not None:
            out["cost_cond"] = lzestimator.lz_cost_cond(args.x, args.y)
    elif args.lz_cmd == "info":
        out = {"info_y_to_x": lzestimator.lz_info(args.x, args.y),
               "info_x_to_y": lzestimator.lz_info(args.y, args.x)}
    elif args.lz_cmd == "ncd":
        try:
            out = {"ncd_xy": lzestimator.ncd(args.x, args.y),
                   "ncd_yx": lzestimator.ncd(args.y, args.x)}
        except lzestimator.UndefinedInput as exc:
            raise CliError(EXIT_USAGE, str(exc)) from None
    else:
        try:
            corpus = (lzestimator.read_corpus(args.corpus) if args.corpus
                      else lzestimator.builtin_corpus())
        except (OSError, ValueError) as exc:
            raise CliError(EXIT_IO, str(exc)) from None
        sys.stdout.write(lzestimator.distance_matrix_csv(corpus))
        return EXIT_OK
    print(json.dumps({"schema": SCHEMA_VERSION, **out}))
    return EXIT_OK


def cmd_check(args) -> int:
    table = _load_table(args.table, verify=False)
    status = {}
    for name, check in (("kraft", check_kraft), ("records", check_records),
                        ("witnesses", check_witnesses)):
        try:
            check(table)
            status[name] = "ok"
        except TableInvariantError as exc:
            status[name] = "FAIL"
            print(f"{exc}", file=sys.stderr)
    if table.L <= 12:
        programs = [p for p, _ in enumerate_programs(table.params).halting_programs()]
        bad = prefix_pairs(programs)
        status["prefixfree"] = "ok" if not bad else "FAIL"
        if bad:
            print(f"prefix-freeness violated: {bad[0][0]} prefixes {bad[0][1]}", file=sys.stderr)
    else:
        status["prefixfree"] = "ok(structural)"
    order = ("kraft", "prefixfree", "witnesses", "records")
    print(" ".join(f"{k}={status[k]}" for k in order))
    return EXIT_OK if all(v.startswith("ok") for v in status.values()) else EXIT_IO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aitlab", description="Resource-bounded complexity and "
                                 "algorithmic probability on a small prefix machine.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enumerate", help="enumerate halting programs and write a table")
    p.add_argument("--L", type=int, default=21)
    p.add_argument("--T", type=int, default=256)
    p.add_argument("--cond", type=_bits, default="")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("info", help="complexity, mutual information and symmetry gaps")
    p.add_argument("--table", required=True)
    p.add_argument("--x", type=_bits, required=True)
    p.add_argument("--y", type=_bits, required=True)
    p.add_argument("--cond-tables", default="auto")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("predict", help="sequential next-bit prediction report (CSV)")
    p.add_argument("--table", required=True)
    p.add_argument("--stream", type=_bits, required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("bayes", help="sequential Bayes update over a hypothesis space")
    p.add_argument("--space", required=True)
    p.add_argument("--evidence", required=True, help="comma-separated evidence labels")
    p.set_defaults(func=cmd_bayes)

    p = sub.add_parser("lz", help="LZ78 cost, information and distance estimates")
    lz = p.add_subparsers(dest="lz_cmd", required=True)
    q = lz.add_parser("cost")
    q.add_argument("--x", type=_bits, required=True)
    q.add_argument("--y", type=_bits, default=None)
    for name in ("info", "ncd"):
        q = lz.add_parser(name)
        q.add_argument("--x", type=_bits, required=True)
        q.add_argument("--y", type=_bits, required=True)
    q = lz.add_parser("matrix")
    q.add_argument("--corpus", default=None, help="directory of 0/1 files (default: built-in)")
    p.set_defaults(func=cmd_lz)

    p = sub.add_parser("check", help="re-verify all invariants of a table file")
    p.add_argument("--table", required=True)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"aitlab: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
