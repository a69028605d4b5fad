"""Next-bit prediction from extension masses of an enumerated table."""
from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .enumeration import DyadicMass, ProgramTable
from .machine import BitString


class NoSupport(LookupError):
    pass


class PredictiveModel:
    def __init__(self, table: ProgramTable):
        self.table = table
        prefix_mass: dict[str, int] = defaultdict(int)
        for x, rec in table.records.items():
            for i in range(len(x) + 1):
                prefix_mass[x[:i]] += rec.mass.numerator
        self._prefix_mass = dict(prefix_mass)

    def extension_numerator(self, z: BitString) -> int:
        return self._prefix_mass.get(z, 0)

    def prefixes(self):
        return self._prefix_mass.keys()


def extension_mass(model: PredictiveModel, z: BitString) -> DyadicMass:
    return DyadicMass(model.extension_numerator(z), model.table.L)


@dataclass(frozen=True)
class Prediction:
    p0: Fraction
    p1: Fraction
    defect: Fraction

    def as_floats(self) -> tuple[float, float, float]:
        return float(self.p0), float(self.p1), float(self.defect)


def predict(model: PredictiveModel, z: BitString) -> Prediction:
    """Probabilities of the next bit after ``z``.

    ``defect`` is the share of mass whose output stops exactly at ``z``.
    """
    m = model.extension_numerator(z)
    if not m:
        raise NoSupport(f"no table output extends {z or 'ε'!s}")
    p0 = Fraction(model.extension_numerator(z + "0"), m)
    p1 = Fraction(model.extension_numerator(z + "1"), m)
    return Prediction(p0, p1, 1 - p0 - p1)


@dataclass(frozen=True)
class StepRecord:
    pos: int
    observed: str
    p0: float | None
    p1: float | None
    defect: float | None
    logloss_cum: float
    scored: bool


def sequential_report(model: PredictiveModel, stream: BitString) -> list[StepRecord]:
    rows = []
    loss = 0.0
    scoring = True
    for pos, bit in enumerate(stream):
        z = stream[:pos]
        if scoring:
            try:
                pred = predict(model, z)
            except NoSupport:
                scoring = False
            else:
                p = pred.p0 if bit == "0" else pred.p1
                if p == 0:
                    scoring = False
                else:
                    loss += math.log2(p.denominator) - math.log2(p.numerator)
                    p0, p1, d = pred.as_floats()
                    rows.append(StepRecord(pos, bit, p0, p1, d, loss, True))
                    continue
        rows.append(StepRecord(pos, bit, None, None, None, loss, False))
    return rows


CSV_HEADER = ["pos", "observed", "p0", "p1", "defect", "logloss_cum", "scored"]


def report_csv(rows: list[StepRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.pos, r.observed,
                    "" if r.p0 is None else repr(r.p0),
                    "" if r.p1 is None else repr(r.p1),
                    "" if r.defect is None else repr(r.defect),
                    repr(r.logloss_cum), int(r.scored)])
    return buf.getvalue()
