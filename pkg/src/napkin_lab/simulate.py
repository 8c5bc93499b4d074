"""Monte Carlo execution of the literal seating process.

The table is simulated exactly as stated: n seats in a circle, napkin i
between seats i and i+1 (mod n), each seated diner taking the left or right
napkin (fair coin if both are present) and going napkinless if neither is.
A strategy drives seat selection through ``choose_seat``.

``monte_carlo`` dispatches to a jitted kernel mirroring ``run_once`` when
numba is importable and falls back to the pure-Python path otherwise; the two
produce bit-identical trial outcomes (pinned by tests).  Aggregation uses
exact integer tallies, so results do not depend on worker count or execution
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .rng import SplitMix64, trial_seed
from .strategies import IntervallicStrategy, choose_seat
from .intervals import IntervalKind


class TableState:
    """Literal circular table: seat occupancy, napkin availability, running count."""

    __slots__ = ("n", "seats", "napkins", "napkinless_count")

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("circular tables need at least 2 seats")
        self.n = n
        self.seats = bytearray(n)        # 1 = occupied
        self.napkins = bytearray([1]) * n  # 1 = still on the table
        self.napkinless_count = 0

    @property
    def occupied_count(self) -> int:
        return sum(self.seats)

    @property
    def napkins_remaining(self) -> int:
        return sum(self.napkins)

    def copy(self) -> "TableState":
        dup = TableState.__new__(TableState)
        dup.n = self.n
        dup.seats = bytearray(self.seats)
        dup.napkins = bytearray(self.napkins)
        dup.napkinless_count = self.napkinless_count
        return dup


def seat_diner(state: TableState, seat: int, rng: SplitMix64) -> TableState:
    """Seat a diner; they take an adjacent napkin (coin flip if both remain).

    Mutates ``state`` in place and returns it.  Coin convention: 0 takes the
    left napkin ((seat-1) mod n), 1 takes the right (seat).
    """
    if state.seats[seat]:
        raise ValueError(f"seat {seat} is already occupied")
    left = (seat - 1) % state.n
    right = seat
    has_left = state.napkins[left]
    has_right = state.napkins[right]
    if has_left and has_right:
        if rng.coin():
            state.napkins[right] = 0
        else:
            state.napkins[left] = 0
    elif has_left:
        state.napkins[left] = 0
    elif has_right:
        state.napkins[right] = 0
    else:
        state.napkinless_count += 1
    state.seats[seat] = 1
    return state


def run_once(strategy: IntervallicStrategy, n: int, seed: int) -> int:
    """One full seating of an n-seat table; returns the napkinless count.

    ``seed`` is the starting stream state, so identical (strategy, n, seed)
    replay identically.
    """
    state = TableState(n)
    rng = SplitMix64(seed)
    for _ in range(n):
        seat_diner(state, choose_seat(strategy, state), rng)
    return state.napkinless_count


@dataclass(frozen=True)
class SimulationResult:
    strategy: str
    n: int
    trials: int
    seed: int
    mean: float
    std_error: float


def decision_tables(strategy: IntervallicStrategy, n: int):
    """Dense label tables for component lengths 1..n-1, for the jitted kernel."""
    import numpy as np

    tables = {}
    for kind in IntervalKind:
        table = np.zeros(n, dtype=np.int64)
        for length in range(1, n):
            table[length] = strategy.decide(kind, length)
        tables[kind] = table
    return tables[IntervalKind.INNER], tables[IntervalKind.OUTER], tables[IntervalKind.ASYM]


def _python_trials(strategy: IntervallicStrategy, n: int, trials: int, master_seed: int):
    return [
        run_once(strategy, n, trial_seed(master_seed, t)) for t in range(trials)
    ]


def monte_carlo(
    strategy: IntervallicStrategy,
    n: int,
    trials: int,
    master_seed: int,
    threads: int | None = None,
    engine: str = "auto",
) -> SimulationResult:
    """Run ``trials`` independent seatings and aggregate exactly.

    ``threads`` caps kernel workers (None = library default); results are
    identical for any value.  ``engine`` is "auto", "numba", or "python".
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")

    counts = None
    if engine not in ("auto", "numba", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine != "python":
        from . import _kernels

        if _kernels.AVAILABLE:
            counts = _kernels.run_trials(
                n, decision_tables(strategy, n), master_seed, trials, threads
            )
        elif engine == "numba":
            raise RuntimeError("numba is not available")
    if counts is None:
        counts = _python_trials(strategy, n, trials, master_seed)

    if isinstance(counts, list):
        sum_x = sum(counts)
        sum_x2 = sum(c * c for c in counts)
    else:
        import numpy as np

        wide = counts.astype(np.int64)
        sum_x = int(wide.sum())
        sum_x2 = int((wide * wide).sum())
    mean = sum_x / trials
    if trials > 1:
        # Exact integer arithmetic until the final two roundings.
        std_error = math.sqrt(
            (trials * sum_x2 - sum_x * sum_x) / (trials * (trials - 1) * trials)
        )
    else:
        std_error = 0.0
    return SimulationResult(
        strategy=strategy.name,
        n=n,
        trials=trials,
        seed=master_seed,
        mean=mean,
        std_error=std_error,
    )
