from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from napkin_lab.intervals import IntervalKind, max_label
from napkin_lab.rng import SplitMix64
from napkin_lab.simulate import TableState, seat_diner
from napkin_lab.strategies import (
    choose_seat,
    get_strategy,
    load_strategy_file,
    long_trap_setting,
    napkin_shunning,
    seat_at_label,
    table_components,
)

INNER = IntervalKind.INNER
OUTER = IntervalKind.OUTER
ASYM = IntervalKind.ASYM


def test_long_trap_setting_labels():
    decide = long_trap_setting().decide
    assert decide(INNER, 5) == 2
    assert decide(INNER, 4) == 1
    assert decide(INNER, 3) == 0
    assert decide(INNER, 2) == 0
    assert decide(ASYM, 9) == 0
    assert decide(OUTER, 9) == 0


def test_napkin_shunning_labels():
    decide = napkin_shunning().decide
    assert decide(INNER, 7) == 3
    assert decide(INNER, 6) == 2  # both middle seats carry this label
    assert decide(INNER, 1) == 0
    assert decide(ASYM, 9) == 0
    assert decide(OUTER, 9) == 0


def test_decide_rejects_empty_components():
    for strategy in (long_trap_setting(), napkin_shunning()):
        with pytest.raises(ValueError):
            strategy.decide(INNER, 0)


@pytest.mark.parametrize("strategy", [long_trap_setting(), napkin_shunning()])
def test_intervallic_property_exhaustive(strategy):
    for n in range(1, 10001):
        for kind in IntervalKind:
            assert 0 <= strategy.decide(kind, n) <= max_label(kind, n)


def test_registry_lookup():
    assert get_strategy("long-trap-setting") is long_trap_setting()
    with pytest.raises(ValueError, match="napkin-shunning"):
        get_strategy("no-such-strategy")


# ---------------------------------------------------------------------------
# decision-table files
# ---------------------------------------------------------------------------


def test_load_strategy_file(tmp_path):
    path = tmp_path / "custom.rules"
    path.write_text(
        """
        # exact rules override defaults
        name table-demo
        inner 6 1
        inner * trap
        outer * 0
        asym * middle
        """
    )
    strategy = load_strategy_file(path)
    assert strategy.name == "table-demo"
    assert strategy.decide(INNER, 6) == 1
    assert strategy.decide(INNER, 9) == 2
    assert strategy.decide(OUTER, 5) == 0
    assert strategy.decide(ASYM, 7) == 3


def test_load_strategy_file_default_name_is_stem(tmp_path):
    path = tmp_path / "mystrat.rules"
    path.write_text("inner * 0\nouter * 0\nasym * 0\n")
    assert load_strategy_file(path).name == "mystrat"


@pytest.mark.parametrize(
    "body, message",
    [
        ("inner * 0\nouter * 0\n", "missing default"),
        ("inner 5 9\ninner * 0\nouter * 0\nasym * 0\n", "out of range"),
        ("inner * 0\ninner * trap\nouter * 0\nasym * 0\n", "duplicate default"),
        ("inner * sideways\nouter * 0\nasym * 0\n", "default must be one of"),
        ("diagonal * 0\n", "unknown kind"),
        ("inner 5\nouter * 0\nasym * 0\n", "expected"),
    ],
)
def test_load_strategy_file_errors(tmp_path, body, message):
    path = tmp_path / "bad.rules"
    path.write_text(body)
    with pytest.raises(ValueError, match=message):
        load_strategy_file(path)


# ---------------------------------------------------------------------------
# mapping onto concrete tables
# ---------------------------------------------------------------------------


def test_choose_seat_pristine_table():
    table = TableState(12)
    assert choose_seat(long_trap_setting(), table) == 0


def test_choose_seat_full_table_errors():
    table = TableState(3)
    rng = SplitMix64(1)
    for seat in range(3):
        seat_diner(table, seat, rng)
    with pytest.raises(ValueError):
        choose_seat(long_trap_setting(), table)


def _table_with(n, occupied, napkins_gone):
    table = TableState(n)
    for s in occupied:
        table.seats[s] = 1
    for i in napkins_gone:
        table.napkins[i] = 0
    return table


def test_choose_seat_single_asym_component():
    # Seats 1..5 empty, napkin 0 taken: the two-napkin endpoint is seat 5.
    table = _table_with(7, occupied=[0, 6], napkins_gone=[0])
    comps = table_components(table)
    assert [(c.kind, c.length) for c in comps] == [(ASYM, 5)]
    assert choose_seat(long_trap_setting(), table) == 5


def test_choose_seat_single_inner_component():
    table = _table_with(8, occupied=[0, 7], napkins_gone=[0, 6])
    comps = table_components(table)
    assert [(c.kind, c.length) for c in comps] == [(INNER, 6)]
    # label 2 matches seats 3 and 4; lowest index wins
    assert choose_seat(long_trap_setting(), table) == 3


def test_choose_seat_outer_before_inner():
    # The inner component sits at the lowest indices, but outer/asym
    # components hold a napkin neighboring exactly one empty seat and must be
    # served first; among them the lowest-seat one wins.
    table = _table_with(10, occupied=[0, 4, 7], napkins_gone=[0, 3, 7])
    kinds = {(c.kind, c.length) for c in table_components(table)}
    assert kinds == {(INNER, 3), (OUTER, 2), (ASYM, 2)}
    assert choose_seat(long_trap_setting(), table) == 5  # label 0 of the outer run


def test_seat_at_label_wraparound():
    table = _table_with(6, occupied=[3], napkins_gone=[3])
    (comp,) = table_components(table)
    assert comp.start == 4 and comp.length == 5 and comp.kind is ASYM
    assert not comp.outer_on_left
    # label 0 sits at the two-napkin end: seat (4 + 4) % 6 = 2
    assert seat_at_label(comp, 0, 6) == 2


def _random_partial_table(rng, n, fills):
    table = TableState(n)
    for _ in range(fills):
        empty = [s for s in range(n) if not table.seats[s]]
        seat = empty[rng.next_u64() % len(empty)]
        seat_diner(table, seat, rng)
    return table


@given(st.integers(2, 16), st.integers(0, 2**63), st.data())
@settings(max_examples=200, deadline=None)
def test_s1_compliance_under_long_trap_setting(n, seed, data):
    fills = data.draw(st.integers(0, n - 1))
    rng = SplitMix64(seed)
    table = _random_partial_table(rng, n, fills)
    seat = choose_seat(long_trap_setting(), table)

    def neighbors_single_empty_napkin(s):
        for nap in ((s - 1) % n, s):
            if not table.napkins[nap]:
                continue
            adjacent_empty = sum(
                1 for seat2 in (nap, (nap + 1) % n) if not table.seats[seat2]
            )
            if adjacent_empty == 1:
                return True
        return False

    trigger_exists = any(
        neighbors_single_empty_napkin(s) for s in range(n) if not table.seats[s]
    )
    if trigger_exists:
        assert neighbors_single_empty_napkin(seat)


@given(st.integers(3, 16), st.integers(0, 2**63), st.data())
@settings(max_examples=200, deadline=None)
def test_split_matches_table_evolution(n, seed, data):
    """Seating via choose_seat changes the component multiset exactly as one
    outcome of the abstract split of the chosen component."""
    from napkin_lab.intervals import split

    strategy = data.draw(st.sampled_from([long_trap_setting(), napkin_shunning()]))
    fills = data.draw(st.integers(1, n - 1))
    rng = SplitMix64(seed)
    table = _random_partial_table(rng, n, fills)

    before = Counter((c.kind, c.length) for c in table_components(table))
    seat = choose_seat(strategy, table)
    comp = next(c for c in table_components(table) if seat in c.seat_indices(n))
    label = strategy.decide(comp.kind, comp.length)
    allowed = []
    for outcome in split(comp.interval(), label).outcomes:
        pieces = Counter(
            (p.kind, p.length) for p in outcome.pieces if p.length > 0
        )
        after = before.copy()
        after[(comp.kind, comp.length)] -= 1
        allowed.append(+(after + pieces))

    seat_diner(table, seat, rng)
    if table.occupied_count == n:
        observed = Counter()
    else:
        observed = Counter((c.kind, c.length) for c in table_components(table))
    assert observed in allowed


def test_first_placement_leaves_one_asym_component():
    for n in (2, 3, 7, 12):
        table = TableState(n)
        seat_diner(table, choose_seat(long_trap_setting(), table), SplitMix64(n))
        comps = table_components(table)
        assert [(c.kind, c.length) for c in comps] == [(ASYM, n - 1)]
