"""Interval classification and exact split semantics for the napkin game.

A partially filled circular table falls apart into independent path-shaped
components of empty seats and still-available napkins.  Each component is
fully described by two numbers once you notice there are only three shapes:

* inner-facing:  n seats, n-1 napkins (a seat at both ends),
* outer-facing:  n seats, n+1 napkins (a napkin at both ends),
* asymmetric:    n seats, n   napkins (a seat at one end, a napkin at the other).

Seats inside a component are addressed by *label* rather than identity: the
distance in napkins to the nearest endpoint seat (inner/outer components), or
to the endpoint seat flanked by two napkins (asymmetric components).  Seats
sharing a label are interchangeable by symmetry.

Seating a diner at a label occupies that seat and removes one adjacent napkin,
splitting the component into at most two smaller ones.  ``split`` returns the
exact outcome distribution of that move; every probability is 1 or 1/2 because
a diner flips a fair coin only when both neighboring napkins are present.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

ONE = Fraction(1)
HALF = Fraction(1, 2)


class IntervalKind(enum.Enum):
    INNER = "inner"
    OUTER = "outer"
    ASYM = "asym"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Interval:
    """A component shape: (kind, number of seats).

    Outer/asymmetric intervals of length 0 are legal pseudo-components (a lone
    napkin, or nothing at all); an inner interval needs at least one seat.
    """

    kind: IntervalKind
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"negative interval length {self.length}")
        if self.kind is IntervalKind.INNER and self.length < 1:
            raise ValueError("an inner-facing interval of length 0 does not exist")

    @property
    def napkins(self) -> int:
        """Napkin count implied by the shape."""
        if self.kind is IntervalKind.INNER:
            return self.length - 1
        if self.kind is IntervalKind.OUTER:
            return self.length + 1
        return self.length

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.length}"


@dataclass(frozen=True)
class SplitOutcome:
    """One way a seating move can resolve: remaining pieces and their probability."""

    pieces: tuple[Interval, ...]
    probability: Fraction


@dataclass(frozen=True)
class SplitDistribution:
    """All outcomes of one seating move; probabilities sum to exactly 1."""

    outcomes: tuple[SplitOutcome, ...]


def max_label(kind: IntervalKind, length: int) -> int:
    """Largest label carried by any seat of a length-``length`` component."""
    if length < 1:
        raise ValueError("no seats")
    if kind is IntervalKind.ASYM:
        return length - 1
    return (length - 1) // 2


def valid_labels(interval: Interval) -> set[int]:
    """Every label some empty seat of the component carries."""
    return set(range(max_label(interval.kind, interval.length) + 1))


def split(interval: Interval, label: int) -> SplitDistribution:
    """Exact outcome distribution of seating a diner at ``label``.

    Piece kinds are correlated through which napkin the diner takes, not
    independent per piece; length-0 outer/asymmetric pieces are kept so that
    napkin accounting stays literal.
    """
    n = interval.length
    kind = interval.kind
    if n < 1:
        raise ValueError(f"cannot seat a diner in {interval}: no seats")
    if not 0 <= label <= max_label(kind, n):
        raise ValueError(f"label {label} invalid for {interval}")

    inner = IntervalKind.INNER
    outer = IntervalKind.OUTER
    asym = IntervalKind.ASYM
    k = n - label - 1

    if kind is inner:
        if label == 0:
            # Endpoint seat of an inner component neighbors exactly one napkin
            # (none at all when n == 1, which costs that diner a napkin).
            pieces = (Interval(inner, n - 1),) if n > 1 else ()
            return SplitDistribution((SplitOutcome(pieces, ONE),))
        return SplitDistribution((
            SplitOutcome((Interval(inner, label), Interval(asym, k)), HALF),
            SplitOutcome((Interval(asym, label), Interval(inner, k)), HALF),
        ))

    if kind is outer:
        # Both neighbors are present even at the endpoints, so every label
        # splits on a coin flip.
        return SplitDistribution((
            SplitOutcome((Interval(outer, label), Interval(asym, k)), HALF),
            SplitOutcome((Interval(asym, label), Interval(outer, k)), HALF),
        ))

    if label == n - 1:
        # The one-napkin endpoint: deterministic shrink by one seat.
        return SplitDistribution((SplitOutcome((Interval(asym, n - 1),), ONE),))
    # The label-m piece contains the two-napkin endpoint.  Taking the napkin on
    # that side leaves (asym m, asym k); taking the other leaves (outer m, inner k).
    return SplitDistribution((
        SplitOutcome((Interval(asym, label), Interval(asym, k)), HALF),
        SplitOutcome((Interval(outer, label), Interval(inner, k)), HALF),
    ))
