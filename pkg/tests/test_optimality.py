from fractions import Fraction

import pytest

from napkin_lab.engine import values_for
from napkin_lab.intervals import Interval, IntervalKind, max_label, split
from napkin_lab.optimality import (
    RAW_TABLE_MAX,
    inequality_records,
    optimal_interval_values,
    raw_table_optimum,
    verify_inequalities,
    verify_strategy_optimal,
)
from napkin_lab.strategies import IntervallicStrategy, long_trap_setting

F = Fraction


@pytest.fixture(scope="module")
def tables():
    return optimal_interval_values(200)


def test_optimal_value_examples(tables):
    assert tables.v_asym[6] == F(41, 32)
    assert tables.v_inner[3] == 1
    assert tables.v_outer[4] == F(1, 2)
    assert tables.v_inner[0] is None
    assert tables.v_outer[0] == 0 and tables.v_asym[0] == 0
    assert tables.v_inner[1] == 1
    assert tables.v_outer[1] == 0 and tables.v_asym[1] == 0


def test_bellman_consistency(tables):
    # Recompute the maximum independently from the split distributions with
    # plain Fractions, and check the long-trap label attains it.
    S = long_trap_setting()
    values = values_for(S)

    def piece_value(piece):
        if piece.kind is IntervalKind.INNER:
            return tables.v_inner[piece.length]
        if piece.kind is IntervalKind.OUTER:
            return tables.v_outer[piece.length]
        return tables.v_asym[piece.length]

    def split_value(kind, n, label):
        total = F(0)
        for outcome in split(Interval(kind, n), label).outcomes:
            total += outcome.probability * sum(map(piece_value, outcome.pieces))
        return total

    for kind in IntervalKind:
        for n in range(2, 61):
            candidates = [
                split_value(kind, n, m) for m in range(max_label(kind, n) + 1)
            ]
            best = max(candidates)
            assert tables.value(kind, n) == best
            assert split_value(kind, n, S.decide(kind, n)) == best


def test_strategy_matches_optimum(tables):
    report = verify_strategy_optimal(200, tables=tables)
    assert report.equal and report.first_divergence is None


def test_corrupted_strategy_diverges_at_inner_four(tables):
    always_endpoint = IntervallicStrategy("always-endpoint", lambda kind, n: 0)
    report = verify_strategy_optimal(10, always_endpoint, tables=tables)
    assert not report.equal
    d = report.first_divergence
    assert (d.kind, d.length) == (IntervalKind.INNER, 4)
    assert d.strategy_value == 1
    assert d.optimal_value == F(5, 4)


def test_raw_table_examples():
    assert raw_table_optimum(2) == 0
    assert raw_table_optimum(3) == F(1, 2)
    assert raw_table_optimum(7) == F(41, 32)


def test_raw_table_matches_engine_to_eight():
    values = values_for(long_trap_setting())
    for n in range(2, 9):
        assert raw_table_optimum(n) == values.table(n)


def test_raw_table_canonicalization_is_sound():
    for n in range(2, 8):
        assert raw_table_optimum(n) == raw_table_optimum(n, canonicalize=False)


def test_raw_table_bounds():
    with pytest.raises(ValueError):
        raw_table_optimum(1)
    with pytest.raises(ValueError):
        raw_table_optimum(RAW_TABLE_MAX + 1)


def test_inequalities_hold_to_100():
    report = verify_inequalities(100)
    assert report.passed
    assert not report.violations
    # every family was actually exercised
    assert set(report.checked) == {
        "correction-bound",
        "split-dominance-inner",
        "split-dominance-outer",
        "split-dominance-asym",
        "monotone-inner-length",
        "inner-vs-asym",
        "asym-vs-outer",
        "monotone-asym-length",
    }
    assert report.checked["split-dominance-inner"] == sum(n - 2 for n in range(3, 101))


def test_inequality_concrete_instantiations():
    records = {
        (r.check, r.n, r.m): r for r in inequality_records(8)
    }
    rec = records[("split-dominance-inner", 7, 3)]
    assert rec.lhs == F(29, 16)
    assert rec.rhs == F(7, 4)
    assert rec.passed
    rec = records[("inner-vs-asym", 5, None)]
    assert (rec.lhs, rec.rhs) == (F(3, 2), F(17, 16))
    rec = records[("correction-bound", 1, None)]
    assert rec.lhs == 2 and rec.rhs == 2


def test_inequalities_require_reasonable_depth():
    with pytest.raises(ValueError):
        verify_inequalities(2)
