"""Exact analysis, optimality verification, and simulation of adaptive
seating strategies for the circular-table napkin game."""

from .intervals import (
    Interval,
    IntervalKind,
    SplitDistribution,
    SplitOutcome,
    split,
    valid_labels,
)
from .engine import (
    closed_form_asym,
    closed_form_inner,
    closed_form_table,
    correction,
    expected_interval,
    expected_table,
    values_for,
)
from .optimality import (
    optimal_interval_values,
    raw_table_optimum,
    verify_inequalities,
    verify_strategy_optimal,
)
from .simulate import SimulationResult, TableState, monte_carlo, run_once, seat_diner
from .strategies import (
    IntervallicStrategy,
    choose_seat,
    get_strategy,
    load_strategy_file,
    long_trap_setting,
    napkin_shunning,
)

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "IntervalKind",
    "IntervallicStrategy",
    "SimulationResult",
    "SplitDistribution",
    "SplitOutcome",
    "TableState",
    "choose_seat",
    "closed_form_asym",
    "closed_form_inner",
    "closed_form_table",
    "correction",
    "expected_interval",
    "expected_table",
    "get_strategy",
    "load_strategy_file",
    "long_trap_setting",
    "monte_carlo",
    "napkin_shunning",
    "optimal_interval_values",
    "raw_table_optimum",
    "run_once",
    "seat_diner",
    "split",
    "valid_labels",
    "values_for",
    "verify_inequalities",
    "verify_strategy_optimal",
]
