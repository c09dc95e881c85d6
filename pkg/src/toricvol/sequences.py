"""Graded sequences of monomial ideals and their asymptotic invariants.

Truncations only give one-sided information: ``m * lct(a_m)`` increases to
``lct(a_.)`` (a supremum), while ``e(a_m) / m^n`` decreases along doubling
``m -> 2m`` towards ``e(a_.)`` because ``a_m^2 ⊆ a_2m``.  More generally
``a_m^k ⊆ a_km`` makes every ``e(a_m) / m^n`` an upper bound for ``e(a_.)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import InvariantViolation
from .germ import ToricGerm
from .ideals import MonomialIdeal, contains, lct, multiplicity, power, product
from .valuations import ToricValuation, valuation_ideal

DEFAULT_TRUNCATION = {2: 24, 3: 12}


def default_truncation(rank: int) -> int:
    return DEFAULT_TRUNCATION.get(rank, 6)


@dataclass(eq=False)
class GradedSequence:
    """``m -> a_m`` for ``m >= 1``, memoized; ``kind`` is informational."""

    germ: ToricGerm
    evaluator: Callable[[int], MonomialIdeal]
    kind: str = "custom"
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __getitem__(self, m: int) -> MonomialIdeal:
        if m < 1:
            raise IndexError("graded sequences are indexed from 1")
        with self._lock:
            hit = self._cache.get(m)
        if hit is not None:
            return hit
        value = self.evaluator(m)
        with self._lock:
            return self._cache.setdefault(m, value)

    @classmethod
    def powers(cls, a: MonomialIdeal) -> "GradedSequence":
        seq = cls(a.germ, lambda m: a, "powers-of-ideal")

        def ev(m):
            return a if m == 1 else product(seq[m - 1], a)

        seq.evaluator = ev
        return seq

    @classmethod
    def of_valuation(cls, v: ToricValuation) -> "GradedSequence":
        return cls(v.germ, lambda m: valuation_ideal(v, m), "valuation-ideals")

    def subsequence(self, N: int) -> "GradedSequence":
        """The sequence ``m -> a_{N m}``."""
        return GradedSequence(self.germ, lambda m: self[N * m], f"{self.kind}[{N}*m]")


def check_graded(s: GradedSequence, max_m: int) -> None:
    """Raise unless ``a_m * a_k ⊆ a_{m+k}`` for all ``m + k <= max_m``."""
    for m in range(1, max_m):
        for k in range(1, max_m - m + 1):
            if k < m:
                continue
            if not contains(s[m + k], product(s[m], s[k])):
                raise InvariantViolation(f"a_{m} * a_{k} is not contained in a_{m + k}")


@dataclass(frozen=True)
class LctTrend:
    lower: Fraction  # certified lower bound for lct(a_.)
    trend: tuple[Fraction, ...]  # m * lct(a_m), m = 1..M


@dataclass(frozen=True)
class MultTrend:
    trend: tuple[Fraction, ...]  # e(a_m) / m^n, m = 1..M
    estimate: Fraction  # min over m <= M, an upper bound for e(a_.)
    doubling: tuple[int, ...]


@dataclass(frozen=True)
class NormalizedMultiplicity:
    value: Fraction
    lct: LctTrend
    mult: MultTrend


def lct_sequence(s: GradedSequence, M: int) -> LctTrend:
    trend = []
    for m in range(1, M + 1):
        c = lct(s[m])
        if c == float("inf"):
            raise InvariantViolation(f"a_{m} is the unit ideal")
        trend.append(m * c)
    return LctTrend(max(trend), tuple(trend))


def _doubling(M: int) -> tuple[int, ...]:
    out, m = [], 1
    while m <= M:
        out.append(m)
        m *= 2
    return tuple(out)


def mult_sequence(s: GradedSequence, M: int) -> MultTrend:
    n = s.germ.rank
    trend = tuple(multiplicity(s[m]) / Fraction(m) ** n for m in range(1, M + 1))
    dbl = _doubling(M)
    for a, b in zip(dbl, dbl[1:]):
        if trend[b - 1] > trend[a - 1]:
            raise InvariantViolation(f"e(a_m)/m^n increased from m={a} to m={b}")
    return MultTrend(trend, min(trend), dbl)


def normalized_multiplicity(s: GradedSequence, M: int | None = None) -> NormalizedMultiplicity:
    """``(lct lower bound)^n * (multiplicity estimate)`` with both trends attached."""
    if M is None:
        M = default_truncation(s.germ.rank)
    lt = lct_sequence(s, M)
    mt = mult_sequence(s, M)
    return NormalizedMultiplicity(lt.lower ** s.germ.rank * mt.estimate, lt, mt)


__all__ = [
    "GradedSequence",
    "LctTrend",
    "MultTrend",
    "NormalizedMultiplicity",
    "check_graded",
    "default_truncation",
    "lct_sequence",
    "mult_sequence",
    "normalized_multiplicity",
    "power",
]
