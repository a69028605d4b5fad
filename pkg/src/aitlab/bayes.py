"""Discrete Bayes updates, the prior-minus-posterior difference, and the
posterior over enumerated programs given an observed output prefix."""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .enumeration import ProgramTable
from .machine import BitString

TOL = 1e-12


class SpaceError(ValueError):
    pass


class ImpossibleEvidence(ValueError):
    def __init__(self, evidence: str, step: int | None = None):
        where = "" if step is None else f" at step {step}"
        super().__init__(f"evidence {evidence!r} has zero marginal probability{where}")
        self.evidence = evidence
        self.step = step


@dataclass(frozen=True)
class HypothesisSpace:
    hypotheses: tuple[str, ...]
    prior: tuple[float, ...]
    likelihood: Mapping[str, tuple[float, ...]]  # evidence label -> per-hypothesis P(E|T)

    def __post_init__(self):
        n = len(self.hypotheses)
        if n == 0:
            raise SpaceError("hypotheses: at least one hypothesis is required")
        if len(set(self.hypotheses)) != n:
            raise SpaceError("hypotheses: names must be distinct")
        if len(self.prior) != n:
            raise SpaceError(f"prior: expected {n} values, got {len(self.prior)}")
        for i, p in enumerate(self.prior):
            if not 0 <= p <= 1:
                raise SpaceError(f"prior[{i}]: {p} is not a probability")
        if abs(math.fsum(self.prior) - 1) > TOL:
            raise SpaceError(f"prior: sums to {math.fsum(self.prior)!r}, not 1")
        for label, row in self.likelihood.items():
            if len(row) != n:
                raise SpaceError(f"likelihood[{label!r}]: expected {n} values, got {len(row)}")
            for i, p in enumerate(row):
                if not 0 <= p <= 1:
                    raise SpaceError(f"likelihood[{label!r}][{i}]: {p} is not a probability")

    def with_prior(self, prior: Sequence[float]) -> "HypothesisSpace":
        return HypothesisSpace(self.hypotheses, tuple(prior), self.likelihood)

    @classmethod
    def from_dict(cls, doc: dict) -> "HypothesisSpace":
        for key in ("hypotheses", "prior", "likelihood"):
            if key not in doc:
                raise SpaceError(f"{key}: missing field")
        if not isinstance(doc["likelihood"], dict):
            raise SpaceError("likelihood: must map evidence labels to lists")
        try:
            return cls(tuple(doc["hypotheses"]), tuple(float(p) for p in doc["prior"]),
                       {k: tuple(float(p) for p in v) for k, v in doc["likelihood"].items()})
        except (TypeError, ValueError) as exc:
            if isinstance(exc, SpaceError):
                raise
            raise SpaceError(f"non-numeric probability: {exc}") from None

    @classmethod
    def load(cls, path: str | os.PathLike) -> "HypothesisSpace":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SpaceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(doc)


@dataclass(frozen=True)
class PosteriorResult:
    evidence: str
    marginal: float
    posterior: tuple[float, ...]
    manifestation: tuple[float, ...]  # prior - posterior, per hypothesis


def posterior(space: HypothesisSpace, evidence: str) -> PosteriorResult:
    if evidence not in space.likelihood:
        raise SpaceError(f"likelihood: no entry for evidence {evidence!r}")
    joint = [p * l for p, l in zip(space.prior, space.likelihood[evidence])]
    marginal = math.fsum(joint)
    if marginal <= 0:
        raise ImpossibleEvidence(evidence)
    post = tuple(j / marginal for j in joint)
    return PosteriorResult(evidence, marginal, post,
                           tuple(a - b for a, b in zip(space.prior, post)))


def sequential_update(space: HypothesisSpace, evidence: Sequence[str]) -> list[PosteriorResult]:
    """Fold ``posterior`` over ``evidence``, each posterior becoming the next prior."""
    results = []
    for step, e in enumerate(evidence):
        try:
            res = posterior(space, e)
        except ImpossibleEvidence:
            raise ImpossibleEvidence(e, step) from None
        results.append(res)
        # renormalize away float drift so the next space validates
        total = math.fsum(res.posterior)
        space = space.with_prior([p / total for p in res.posterior])
    return results


def program_posterior(table: ProgramTable, z: BitString) -> dict[BitString, Fraction]:
    """Exact posterior over halting programs whose output extends ``z``,
    with prior weight 2^-|p| on each program."""
    weights = {p: Fraction(1, 1 << len(p))
               for p, x in table.halting_programs() if x.startswith(z)}
    total = sum(weights.values())
    if not total:
        raise ImpossibleEvidence(z or "ε")
    return {p: w / total for p, w in sorted(weights.items())}


def next_bit_marginal(table: ProgramTable, z: BitString) -> tuple[Fraction, Fraction]:
    post = program_posterior(table, z)
    outputs = dict(table.halting_programs())
    p0 = sum((w for p, w in post.items() if outputs[p][len(z):len(z) + 1] == "0"), Fraction(0))
    p1 = sum((w for p, w in post.items() if outputs[p][len(z):len(z) + 1] == "1"), Fraction(0))
    return p0, p1
