"""Exhaustive enumeration of halting programs and exact mass accounting."""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

import numpy as np

from . import _kernel
from .machine import (
    ISA_VERSION,
    BitString,
    Halted,
    NeedsBit,
    check_bits,
    enc2,
    initial_state,
    resume,
    run,
)

log = logging.getLogger(__name__)

MAX_L = 60
DEFAULT_L = 21
DEFAULT_T = 256
TABLE_MAGIC = "AITLAB-TABLE 1"

# opcodes fixed per worker partition
_PARTITION_DEPTH = 2


class ConfigError(ValueError):
    pass


class TableFormatError(ValueError):
    pass


class TableInvariantError(ValueError):
    def __init__(self, invariant: str, detail: str):
        super().__init__(f"{invariant} violated: {detail}")
        self.invariant = invariant


@dataclass(frozen=True)
class EnumParams:
    L: int = DEFAULT_L
    T: int = DEFAULT_T
    condition: BitString = ""
    isa_version: int = ISA_VERSION

    def __post_init__(self):
        if not isinstance(self.L, int) or self.L % 3 or not 3 <= self.L <= MAX_L:
            raise ConfigError(f"L must be a multiple of 3 in [3, {MAX_L}], got {self.L}")
        if not isinstance(self.T, int) or self.T < 1:
            raise ConfigError(f"T must be >= 1, got {self.T}")
        if self.isa_version != ISA_VERSION:
            raise ConfigError(f"unsupported ISA version {self.isa_version}")
        try:
            check_bits(self.condition, "condition")
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def with_condition(self, condition: BitString) -> "EnumParams":
        return EnumParams(self.L, self.T, condition, self.isa_version)

    def as_dict(self) -> dict:
        return {"L": self.L, "T": self.T, "cond": self.condition, "isa": self.isa_version}


@dataclass(frozen=True, order=True)
class DyadicMass:
    """``numerator / 2**scale``, kept exact."""

    numerator: int
    scale: int

    def __post_init__(self):
        if self.numerator < 0:
            raise ValueError("mass numerator must be non-negative")

    def __add__(self, other: "DyadicMass") -> "DyadicMass":
        if self.scale != other.scale:
            raise ValueError("cannot add masses at different scales")
        return DyadicMass(self.numerator + other.numerator, self.scale)

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __float__(self) -> float:
        return math.ldexp(self.numerator, -self.scale)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.scale)

    def log2(self) -> float:
        # integer log avoids rounding the mass to a float first
        if not self.numerator:
            return -math.inf
        return math.log2(self.numerator) - self.scale

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.scale}"


@dataclass(frozen=True)
class OutputRecord:
    output: BitString
    min_len: int
    mass: DyadicMass
    witness: BitString
    # not persisted in the cache format; None after load
    program_count: int | None = field(default=None, compare=False)


@dataclass
class ProgramTable:
    params: EnumParams
    records: dict[BitString, OutputRecord]
    total_mass: DyadicMass
    # every halting program as (value, opcode count, output); only present
    # on freshly enumerated tables
    programs: tuple[np.ndarray, np.ndarray, list[BitString]] | None = field(
        default=None, compare=False, repr=False
    )

    def __eq__(self, other):
        if not isinstance(other, ProgramTable):
            return NotImplemented
        return (self.params == other.params and self.total_mass == other.total_mass
                and self.records == other.records)

    @property
    def L(self) -> int:
        return self.params.L

    def __contains__(self, x: BitString) -> bool:
        return x in self.records

    def __len__(self) -> int:
        return len(self.records)

    def sorted_records(self) -> list[OutputRecord]:
        return [self.records[k] for k in sorted(self.records)]

    def halting_programs(self) -> Iterator[tuple[BitString, BitString]]:
        if self.programs is None:
            raise ValueError("table was loaded from cache; re-enumerate to list programs")
        values, nops, outputs = self.programs
        for v, n, x in zip(values.tolist(), nops.tolist(), outputs):
            yield format(v, f"0{3 * n}b"), x


def khat(table: ProgramTable, x: BitString) -> int | None:
    rec = table.records.get(x)
    return None if rec is None else rec.min_len


def mass(table: ProgramTable, x: BitString) -> DyadicMass:
    rec = table.records.get(x)
    return rec.mass if rec is not None else DyadicMass(0, table.L)


# -- search ----------------------------------------------------------------

_EMPTY = np.zeros(0, np.int64)


def _cond_cells(condition: BitString) -> np.ndarray:
    return np.array([int(b) for b in enc2(condition)], dtype=np.uint8)


def _search_chunk(prefixes, condition, max_ops, T):
    """Run the kernel for each (prefix, min_ops) and decode outputs to strings."""
    cells = _cond_cells(condition)
    values, nops, outputs = [], [], []
    for prefix, min_ops in prefixes:
        prog, n, start, length, bits = _kernel.search(
            np.asarray(prefix, dtype=np.int64), cells, max_ops, T, min_ops)
        text = bits.tobytes().translate(_BIT_CHARS).decode()
        values.append(prog)
        nops.append(n)
        outputs.extend(text[s:s + k] for s, k in zip(start.tolist(), length.tolist()))
    return (np.concatenate(values) if values else _EMPTY,
            np.concatenate(nops) if nops else _EMPTY,
            outputs)


_BIT_CHARS = bytes.maketrans(b"\x00\x01", b"01")


def _partitions(max_ops: int, workers: int):
    if workers == 1 or max_ops <= _PARTITION_DEPTH:
        return [[((), 0)]]
    depth = _PARTITION_DEPTH
    tasks = [((a, b), depth) for a in range(8) for b in range(8)]
    chunks = [tasks[i::workers] for i in range(workers)]
    chunks[0].insert(0, ("shallow", depth - 1))
    return chunks


def _run_chunk(args):
    chunk, condition, max_ops, T = args
    parts = []
    for prefix, k in chunk:
        if prefix == "shallow":
            # programs shorter than the partition depth live above every prefix
            parts.append(_search_chunk([((), 0)], condition, k, T))
        else:
            parts.append(_search_chunk([(prefix, k)], condition, max_ops, T))
    return (np.concatenate([p[0] for p in parts]),
            np.concatenate([p[1] for p in parts]),
            [x for p in parts for x in p[2]])


def _search_python(params: EnumParams):
    """Plain DFS over the reference interpreter; slow, used for cross-checks."""
    max_bits = params.L
    stack = [initial_state(params.condition)]
    while stack:
        state = stack.pop()
        # push 1-branches first so that 0-branches are explored first
        for op in range(7, -1, -1):
            child = state.copy()
            program = child.code + format(op, "03b")
            outcome = resume(child, program, params.T)
            if isinstance(outcome, Halted):
                yield program, outcome.output
            elif isinstance(outcome, NeedsBit) and len(program) < max_bits:
                stack.append(outcome.state)


def enumerate_programs(params: EnumParams, workers: int = 1, engine: str = "compiled") -> ProgramTable:
    """Build the table of every program of at most ``params.L`` bits that halts
    within ``params.T`` steps, consuming exactly its own bits."""
    if workers < 1:
        raise ConfigError("workers must be >= 1")
    max_ops = params.L // 3
    if engine == "python":
        found = list(_search_python(params))
        values = np.array([int(p, 2) for p, _ in found], dtype=np.int64)
        nops = np.array([len(p) // 3 for p, _ in found], dtype=np.int64)
        outputs = [x for _, x in found]
    elif engine == "compiled":
        chunks = _partitions(max_ops, workers)
        jobs = [(c, params.condition, max_ops, params.T) for c in chunks]
        if len(jobs) == 1:
            results = [_run_chunk(jobs[0])]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_run_chunk, jobs))
        values = np.concatenate([r[0] for r in results])
        nops = np.concatenate([r[1] for r in results])
        outputs = [x for r in results for x in r[2]]
    else:
        raise ConfigError(f"unknown engine {engine!r}")
    return _tabulate(params, values, nops, outputs)


def _tabulate(params, values, nops, outputs) -> ProgramTable:
    L = params.L
    order = np.lexsort((values, nops))  # shortest first, then lexicographic
    values, nops = values[order], nops[order]
    outputs = [outputs[i] for i in order.tolist()]
    best: dict[str, tuple[int, int]] = {}
    num: dict[str, int] = {}
    count: dict[str, int] = {}
    total = 0
    for v, n, x in zip(values.tolist(), nops.tolist(), outputs):
        w = 1 << (L - 3 * n)
        total += w
        if x not in best:
            best[x] = (n, v)
            num[x] = 0
            count[x] = 0
        num[x] += w
        count[x] += 1
    records = {
        x: OutputRecord(x, 3 * n, DyadicMass(num[x], L), format(v, f"0{3 * n}b"), count[x])
        for x, (n, v) in best.items()
    }
    return ProgramTable(params, records, DyadicMass(total, L), (values, nops, outputs))


# -- invariants ------------------------------------------------------------


def check_kraft(table: ProgramTable) -> None:
    total = table.total_mass.numerator
    if total > 1 << table.L:
        raise TableInvariantError("Kraft", f"total mass {table.total_mass} exceeds 1")
    summed = sum(r.mass.numerator for r in table.records.values())
    if summed != total:
        raise TableInvariantError("Kraft", f"record masses sum to {summed}, TOTAL says {total}")


def check_records(table: ProgramTable) -> None:
    for x, rec in table.records.items():
        if len(rec.witness) != rec.min_len:
            raise TableInvariantError("witness", f"output {x or '-'}: |witness| != min_len")
        if rec.mass.numerator < 1 << (table.L - rec.min_len):
            raise TableInvariantError("mass", f"output {x or '-'}: mass below 2^-min_len")


def check_witnesses(table: ProgramTable) -> None:
    p = table.params
    for x, rec in table.records.items():
        outcome = run(rec.witness, p.condition, p.T)
        if not (isinstance(outcome, Halted) and outcome.output == x
                and outcome.consumed == len(rec.witness)):
            raise TableInvariantError(
                "witness", f"witness {rec.witness} does not reproduce output {x or '-'}")


def prefix_pairs(programs: list[BitString]) -> list[tuple[BitString, BitString]]:
    """All (p, q) with p a proper prefix of q, by direct pairwise scan."""
    return [(p, q) for p in programs for q in programs if len(p) < len(q) and q.startswith(p)]


# -- cache file ------------------------------------------------------------


def _fmt(s: BitString) -> str:
    return s if s else "-"


def _parse_bits(tok: str, where: str) -> BitString:
    s = "" if tok == "-" else tok
    if set(s) - {"0", "1"}:
        raise TableFormatError(f"{where}: not a bit string: {tok!r}")
    return s


def dumps(table: ProgramTable) -> str:
    p = table.params
    lines = [TABLE_MAGIC, f"isa={p.isa_version} L={p.L} T={p.T} cond={_fmt(p.condition)}"]
    for rec in table.sorted_records():
        lines.append(f"{_fmt(rec.output)} {rec.min_len} {rec.mass.numerator} {rec.witness}")
    lines.append(f"TOTAL {table.total_mass.numerator}")
    return "\n".join(lines) + "\n"


def save(table: ProgramTable, destination: str | os.PathLike) -> None:
    Path(destination).write_text(dumps(table), encoding="utf-8")


def loads(text: str, verify: bool = True) -> ProgramTable:
    lines = text.splitlines()
    if len(lines) < 3 or lines[0] != TABLE_MAGIC:
        raise TableFormatError(f"line 1: expected {TABLE_MAGIC!r}")
    try:
        fields = dict(kv.split("=", 1) for kv in lines[1].split())
        isa, L, T = int(fields["isa"]), int(fields["L"]), int(fields["T"])
        cond = _parse_bits(fields["cond"], "line 2")
    except (KeyError, ValueError) as exc:
        raise TableFormatError(f"line 2: bad parameter line ({exc})") from None
    if isa != ISA_VERSION:
        raise TableFormatError(f"line 2: ISA version {isa} does not match {ISA_VERSION}")
    try:
        params = EnumParams(L, T, cond, isa)
    except ConfigError as exc:
        raise TableFormatError(f"line 2: {exc}") from None

    records = {}
    for lineno, line in enumerate(lines[2:-1], start=3):
        parts = line.split()
        if len(parts) != 4:
            raise TableFormatError(f"line {lineno}: expected 4 fields")
        try:
            x = _parse_bits(parts[0], f"line {lineno}")
            rec = OutputRecord(x, int(parts[1]), DyadicMass(int(parts[2]), L),
                               _parse_bits(parts[3], f"line {lineno}"))
        except ValueError as exc:
            raise TableFormatError(f"line {lineno}: {exc}") from None
        if x in records:
            raise TableFormatError(f"line {lineno}: duplicate output {parts[0]}")
        records[x] = rec
    last = lines[-1].split()
    if len(last) != 2 or last[0] != "TOTAL" or not last[1].isdigit():
        raise TableFormatError(f"line {len(lines)}: expected 'TOTAL <int>'")
    table = ProgramTable(params, records, DyadicMass(int(last[1]), L))
    if verify:
        check_kraft(table)
        check_records(table)
        check_witnesses(table)
    return table


def load(source: str | os.PathLike, verify: bool = True) -> ProgramTable:
    return loads(Path(source).read_text(encoding="utf-8"), verify=verify)


# -- table cache -----------------------------------------------------------

_memo: dict[EnumParams, ProgramTable] = {}


def cached_table(params: EnumParams, cache_dir: str | os.PathLike | None = None,
                 workers: int = 1) -> ProgramTable:
    """Enumerate once per parameter set, memoized in-process and optionally on disk."""
    path = None if cache_dir is None else Path(cache_dir) / cache_filename(params)
    if params in _memo:
        table = _memo[params]
    elif path is not None and path.exists():
        table = _memo[params] = load(path)
        return table
    else:
        log.info("enumerating L=%d T=%d cond=%s", params.L, params.T, _fmt(params.condition))
        table = enumerate_programs(params, workers=workers)
    if path is not None and not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        save(table, path)
    _memo[params] = table
    return table


def cache_filename(params: EnumParams) -> str:
    return f"L{params.L}-T{params.T}-c{_fmt(params.condition)}.tbl"
