"""Exact expected napkinless-diner counts.

Everything here is arbitrary-precision rational: every probability in the
process is 1/2, so each expected value is a dyadic fraction whose denominator
grows like 2^n, and the downstream checks demand exact equality.  Floats never
appear; formatting happens at the CLI boundary.

``values_for`` memoizes per-strategy tables of expected counts for inner,
outer, and asymmetric components, filled bottom-up from the split
distributions.  For the full circular table of n seats the first diner always
leaves one asymmetric component of length n-1, so the table expectation is
just that component's value.

The ``correction`` sequence (1, 0, -2, 2, 2, -6, ...; cf. OEIS A110512) drives
the exponentially vanishing term of the closed forms for the long-trap-setting
strategy.
"""

from __future__ import annotations

import threading
import weakref
from fractions import Fraction

from .intervals import Interval, IntervalKind, split
from .strategies import IntervallicStrategy

ZERO = Fraction(0)

_correction_terms = [1, 0]
_correction_lock = threading.Lock()


def correction(n: int) -> int:
    """Term n of the integer sequence s(0)=1, s(1)=0, s(n) = -s(n-1) - 2s(n-2)."""
    if n < 0:
        raise ValueError("sequence index must be >= 0")
    if n >= len(_correction_terms):
        with _correction_lock:
            while len(_correction_terms) <= n:
                _correction_terms.append(
                    -_correction_terms[-1] - 2 * _correction_terms[-2]
                )
    return _correction_terms[n]


class StrategyValues:
    """Memoized expected napkinless counts for one strategy, by kind and length."""

    def __init__(self, strategy: IntervallicStrategy):
        self.strategy = strategy
        # Index by component length; inner length 0 does not exist.
        self._inner: list[Fraction | None] = [None, Fraction(1)]
        self._outer: list[Fraction] = [ZERO, ZERO]
        self._asym: list[Fraction] = [ZERO, ZERO]
        self._lock = threading.RLock()

    def _piece_value(self, piece: Interval) -> Fraction:
        if piece.kind is IntervalKind.INNER:
            return self._inner[piece.length]
        if piece.kind is IntervalKind.OUTER:
            return self._outer[piece.length]
        return self._asym[piece.length]

    def _evaluate(self, kind: IntervalKind, length: int) -> Fraction:
        label = self.strategy.decide(kind, length)
        dist = split(Interval(kind, length), label)
        total = ZERO
        for outcome in dist.outcomes:
            total += outcome.probability * sum(
                (self._piece_value(p) for p in outcome.pieces), start=ZERO
            )
        return total

    def _extend(self, upto: int) -> None:
        with self._lock:
            for n in range(len(self._asym), upto + 1):
                self._inner.append(self._evaluate(IntervalKind.INNER, n))
                self._outer.append(self._evaluate(IntervalKind.OUTER, n))
                self._asym.append(self._evaluate(IntervalKind.ASYM, n))

    def inner(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("inner components have length >= 1")
        self._extend(n)
        return self._inner[n]

    def outer(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("negative length")
        self._extend(n)
        return self._outer[n]

    def asym(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("negative length")
        self._extend(n)
        return self._asym[n]

    def table(self, n: int) -> Fraction:
        """Expected napkinless diners on a full circular table of n seats."""
        if n < 2:
            raise ValueError("circular tables need at least 2 seats")
        return self.asym(n - 1)


_tables: "weakref.WeakKeyDictionary[IntervallicStrategy, StrategyValues]" = (
    weakref.WeakKeyDictionary()
)
_tables_lock = threading.Lock()


def values_for(strategy: IntervallicStrategy) -> StrategyValues:
    with _tables_lock:
        table = _tables.get(strategy)
        if table is None:
            table = StrategyValues(strategy)
            _tables[strategy] = table
        return table


def expected_interval(strategy: IntervallicStrategy, interval: Interval) -> Fraction:
    """Exact expected napkinless count for one component under ``strategy``."""
    values = values_for(strategy)
    if interval.kind is IntervalKind.INNER:
        return values.inner(interval.length)
    if interval.kind is IntervalKind.OUTER:
        return values.outer(interval.length)
    return values.asym(interval.length)


def expected_table(strategy: IntervallicStrategy, n: int) -> Fraction:
    """Exact expected napkinless count on a circular table of n seats (n >= 2)."""
    return values_for(strategy).table(n)


# ---------------------------------------------------------------------------
# Closed forms for the long-trap-setting strategy
# ---------------------------------------------------------------------------


def closed_form_inner(n: int) -> Fraction:
    """Inner-component expectation under long trap setting, in closed form (n >= 2)."""
    if n < 2:
        raise ValueError("closed form holds for n >= 2")
    return (
        Fraction(3 * n, 16)
        + Fraction(33, 64)
        + Fraction(7 * correction(n - 2) + 5 * correction(n - 1), 2 ** (n + 4))
    )


def closed_form_asym(n: int) -> Fraction:
    """Asymmetric-component expectation under long trap setting, in closed form (n >= 2)."""
    if n < 2:
        raise ValueError("closed form holds for n >= 2")
    return (
        Fraction(3 * n, 16)
        + Fraction(9, 64)
        - Fraction(correction(n - 2) + 3 * correction(n - 1), 2 ** (n + 4))
    )


def closed_form_table(n: int) -> Fraction:
    """Full-table expectation under long trap setting, in closed form (n >= 3)."""
    if n < 3:
        raise ValueError("closed form holds for n >= 3")
    return (
        Fraction(3 * n, 16)
        - Fraction(3, 64)
        - Fraction(correction(n - 3) + 3 * correction(n - 2), 2 ** (n + 3))
    )
