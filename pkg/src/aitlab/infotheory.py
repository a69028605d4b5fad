"""Conditional, joint and mutual complexity estimates and the gaps between
the two sides of each symmetry identity.

Every quantity is read off enumerated tables at fixed resources ``(L, T)``.
Conditional estimates come from the table enumerated with the condition
preloaded on the tape.  Gaps are reported as-is: negative mutual information
at finite resources is a resource artifact and is never clamped.
"""
from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass

from .enumeration import DyadicMass, EnumParams, ProgramTable, cached_table, khat, mass
from .machine import BitString, pair


class InsufficientResources(LookupError):
    """An estimate needed for a quantity is absent at the given resources."""


class Estimator:
    """Hands out (cached) tables for one ``(L, T)`` and any condition."""

    def __init__(self, params: EnumParams, cache_dir: str | os.PathLike | None = None,
                 workers: int = 1, base: ProgramTable | None = None):
        self.params = params.with_condition("")
        self.cache_dir = cache_dir
        self.workers = workers
        self._tables: dict[str, ProgramTable] = {}
        if base is not None:
            if base.params != self.params:
                raise ValueError("base table must be unconditional at the same L, T")
            self._tables[""] = base

    def table(self, condition: BitString = "") -> ProgramTable:
        if condition not in self._tables:
            self._tables[condition] = cached_table(
                self.params.with_condition(condition), self.cache_dir, self.workers)
        return self._tables[condition]

    def khat(self, x: BitString, given: BitString = "") -> int | None:
        return khat(self.table(given), x)

    def mass(self, x: BitString, given: BitString = "") -> DyadicMass:
        return mass(self.table(given), x)


def _as_estimator(params_or_est) -> Estimator:
    if isinstance(params_or_est, Estimator):
        return params_or_est
    return Estimator(params_or_est)


def _need(value, term: str):
    if value is None:
        raise InsufficientResources(f"{term} is absent at these resources")
    return value


def _show(s: BitString) -> str:
    return repr(s) if s else "ε"


def conditional_khat(x: BitString, y: BitString, params) -> int | None:
    return _as_estimator(params).khat(x, given=y)


def joint_khat(x: BitString, y: BitString, params) -> int | None:
    return _as_estimator(params).khat(pair(x, y))


def mutual_info(x: BitString, y: BitString, params) -> int:
    """Information in ``y`` about ``x``: khat(x) - khat(x|y)."""
    est = _as_estimator(params)
    kx = _need(est.khat(x), f"K({_show(x)})")
    kxy = _need(est.khat(x, y), f"K({_show(x)}|{_show(y)})")
    return kx - kxy


def symmetry_gap(x: BitString, y: BitString, params) -> int:
    est = _as_estimator(params)
    return mutual_info(x, y, est) - mutual_info(y, x, est)


def chain_gap(x: BitString, y: BitString, params) -> int:
    """khat(x,y) - (khat(x) + khat(y|x))."""
    est = _as_estimator(params)
    kj = _need(joint_khat(x, y, est), f"K({_show(x)},{_show(y)})")
    kx = _need(est.khat(x), f"K({_show(x)})")
    kyx = _need(est.khat(y, x), f"K({_show(y)}|{_show(x)})")
    return kj - (kx + kyx)


def coding_gap(x: BitString, params) -> float:
    """khat(x) + log2 m(x); non-negative since m(x) >= 2^-khat(x)."""
    est = _as_estimator(params)
    k = _need(est.khat(x), f"K({_show(x)})")
    m = est.mass(x)
    # m = n / 2^L with n >= 2^(L-k), so the gap is log2(n) - (L - k) exactly
    return math.log2(m.numerator) - (m.scale - k)


def bayes_m_gap(x: BitString, y: BitString, params) -> float:
    """log2 m(x|y) - [log2 m(x) - log2 m(y) + log2 m(y|x)]."""
    est = _as_estimator(params)
    terms = [
        (f"m({_show(x)}|{_show(y)})", est.mass(x, y)),
        (f"m({_show(x)})", est.mass(x)),
        (f"m({_show(y)})", est.mass(y)),
        (f"m({_show(y)}|{_show(x)})", est.mass(y, x)),
    ]
    for name, m in terms:
        if not m:
            raise InsufficientResources(f"{name} is zero at these resources")
    m_xy, m_x, m_y, m_yx = (m for _, m in terms)
    # all four share the scale 2^L, which cancels
    if (m_xy.numerator * m_y.numerator) == (m_x.numerator * m_yx.numerator):
        return 0.0
    return (math.log2(m_xy.numerator) + math.log2(m_y.numerator)
            - math.log2(m_x.numerator) - math.log2(m_yx.numerator))


@dataclass
class InfoReport:
    x: BitString
    y: BitString
    khat_x: int | None
    khat_y: int | None
    khat_x_given_y: int | None
    khat_y_given_x: int | None
    khat_joint: int | None
    i_y_to_x: int | None
    i_x_to_y: int | None
    symmetry_gap: int | None
    chain_gap_xy: int | None
    chain_gap_yx: int | None
    coding_gap_x: float | None
    bayes_log_gap: float | None
    params: dict

    def missing(self) -> list[str]:
        return [k for k, v in asdict(self).items() if v is None]

    def to_dict(self) -> dict:
        return asdict(self)


def _try(fn, *args):
    try:
        return fn(*args)
    except InsufficientResources:
        return None


def info_report(x: BitString, y: BitString, params) -> InfoReport:
    est = _as_estimator(params)
    p = est.params
    return InfoReport(
        x=x,
        y=y,
        khat_x=est.khat(x),
        khat_y=est.khat(y),
        khat_x_given_y=est.khat(x, y),
        khat_y_given_x=est.khat(y, x),
        khat_joint=joint_khat(x, y, est),
        i_y_to_x=_try(mutual_info, x, y, est),
        i_x_to_y=_try(mutual_info, y, x, est),
        symmetry_gap=_try(symmetry_gap, x, y, est),
        chain_gap_xy=_try(chain_gap, x, y, est),
        chain_gap_yx=_try(chain_gap, y, x, est),
        coding_gap_x=_try(coding_gap, x, est),
        bayes_log_gap=_try(bayes_m_gap, x, y, est),
        params={"L": p.L, "T": p.T, "cond": "", "isa": p.isa_version},
    )
