"""Seating strategies and their mapping onto concrete tables.

A strategy here is *intervallic*: a pure decision rule (kind, length) -> label
choosing where to seat the next diner inside a component.  Two built-ins are
provided:

* ``long-trap-setting``: next to any napkin that neighbors exactly one empty
  seat; otherwise (inside an all-empty stretch) two seats in from the boundary
  when the stretch is long enough -- label sgn(n-4)+1 on inner components.
* ``napkin-shunning``: same first rule, otherwise the dead middle of the
  stretch -- label floor((n-1)/2) on inner components.

``choose_seat`` applies a decision rule to a literal table state by
decomposing it into components and resolving the chosen label to a seat index
with deterministic tie-breaks, which keeps simulation runs reproducible.

User strategies can be loaded from plain-text decision tables; see
``load_strategy_file`` for the grammar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

from .intervals import Interval, IntervalKind, max_label

if TYPE_CHECKING:  # pragma: no cover
    from .simulate import TableState


@dataclass(frozen=True, eq=False)
class IntervallicStrategy:
    """A named decision rule (kind, length) -> label.

    The rule must return a valid label for every kind and every length >= 1;
    instances hash by identity so value caches can key on the object.
    """

    name: str
    decide: Callable[[IntervalKind, int], int]


def _require_positive(length: int) -> None:
    if length < 1:
        raise ValueError(f"no decision for a component of length {length}")


def trap_label(length: int) -> int:
    """0 for length <= 3, 1 for 4, else 2: two seats in from the boundary."""
    _require_positive(length)
    if length <= 3:
        return 0
    return 1 if length == 4 else 2


def middle_label(length: int) -> int:
    """The center label; for even lengths both middle seats carry it."""
    _require_positive(length)
    return (length - 1) // 2


def _long_trap_decide(kind: IntervalKind, length: int) -> int:
    _require_positive(length)
    if kind is IntervalKind.INNER:
        return trap_label(length)
    return 0


def _napkin_shunning_decide(kind: IntervalKind, length: int) -> int:
    _require_positive(length)
    if kind is IntervalKind.INNER:
        return middle_label(length)
    return 0


LONG_TRAP_SETTING = IntervallicStrategy("long-trap-setting", _long_trap_decide)
NAPKIN_SHUNNING = IntervallicStrategy("napkin-shunning", _napkin_shunning_decide)

REGISTRY: dict[str, IntervallicStrategy] = {
    LONG_TRAP_SETTING.name: LONG_TRAP_SETTING,
    NAPKIN_SHUNNING.name: NAPKIN_SHUNNING,
}


def long_trap_setting() -> IntervallicStrategy:
    return LONG_TRAP_SETTING


def napkin_shunning() -> IntervallicStrategy:
    return NAPKIN_SHUNNING


def get_strategy(name: str) -> IntervallicStrategy:
    try:
        return REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise ValueError(f"unknown strategy {name!r}; available: {known}") from None


# ---------------------------------------------------------------------------
# Decision-table files
# ---------------------------------------------------------------------------

_KIND_TOKENS = {
    "inner": IntervalKind.INNER,
    "outer": IntervalKind.OUTER,
    "asym": IntervalKind.ASYM,
}

_DEFAULT_EXPRS: dict[str, Callable[[int], int]] = {
    "0": lambda length: 0,
    "middle": middle_label,
    "trap": trap_label,
}


def load_strategy_file(path, name: str | None = None) -> IntervallicStrategy:
    """Parse a plain-text decision table into a strategy.

    Grammar (one rule per line, ``#`` starts a comment)::

        name <identifier>          optional, once; default is the file stem
        <kind> <length> <label>    exact rule for one component length
        <kind> * <expr>            default rule; expr is one of 0, middle, trap

    with kind one of ``inner``, ``outer``, ``asym``.  Every kind needs a
    default rule; exact rules override it and are range-checked on load.
    """
    from pathlib import Path

    path = Path(path)
    exact: dict[tuple[IntervalKind, int], int] = {}
    defaults: dict[IntervalKind, Callable[[int], int]] = {}
    file_name = None

    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "name":
            if len(parts) != 2 or file_name is not None:
                raise ValueError(f"{path}:{lineno}: malformed name line")
            file_name = parts[1]
            continue
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected '<kind> <length|*> <label|expr>'")
        kind_tok, length_tok, value_tok = parts
        kind = _KIND_TOKENS.get(kind_tok)
        if kind is None:
            raise ValueError(f"{path}:{lineno}: unknown kind {kind_tok!r}")
        if length_tok == "*":
            expr = _DEFAULT_EXPRS.get(value_tok)
            if expr is None:
                choices = ", ".join(sorted(_DEFAULT_EXPRS))
                raise ValueError(f"{path}:{lineno}: default must be one of {choices}")
            if kind in defaults:
                raise ValueError(f"{path}:{lineno}: duplicate default for {kind_tok}")
            defaults[kind] = expr
        else:
            try:
                length = int(length_tok)
                label = int(value_tok)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: length and label must be integers") from None
            if length < 1:
                raise ValueError(f"{path}:{lineno}: length must be >= 1")
            if not 0 <= label <= max_label(kind, length):
                raise ValueError(
                    f"{path}:{lineno}: label {label} out of range for {kind_tok} {length}"
                )
            exact[(kind, length)] = label

    missing = [k.value for k in IntervalKind if k not in defaults]
    if missing:
        raise ValueError(f"{path}: missing default rule for kind(s): {', '.join(missing)}")

    def decide(kind: IntervalKind, length: int) -> int:
        _require_positive(length)
        hit = exact.get((kind, length))
        if hit is not None:
            return hit
        label = defaults[kind](length)
        return min(label, max_label(kind, length))

    return IntervallicStrategy(name or file_name or path.stem, decide)


# ---------------------------------------------------------------------------
# Mapping decision rules onto literal tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    """A maximal run of empty seats on the table, with its component shape.

    ``start`` is the first seat of the run walking clockwise from the occupied
    boundary; the run may wrap past seat n-1.  ``outer_on_left`` records which
    end of an asymmetric run still has its boundary napkin.
    """

    start: int
    length: int
    kind: IntervalKind
    outer_on_left: bool

    def interval(self) -> Interval:
        return Interval(self.kind, self.length)

    def seat_indices(self, n: int) -> list[int]:
        return [(self.start + p) % n for p in range(self.length)]


def table_components(table: "TableState") -> list[Component]:
    """Decompose a table with at least one diner into its empty-run components.

    Napkins strictly between two empty seats are always present (nobody could
    have taken them), so a run's kind depends only on its two boundary napkins.
    """
    n = table.n
    seats = table.seats
    napkins = table.napkins
    if not any(seats):
        raise ValueError("a pristine table is a single cycle, not a set of components")
    comps = []
    for i in range(n):
        if seats[i] or not seats[(i - 1) % n]:
            continue
        length = 1
        while not seats[(i + length) % n]:
            length += 1
        left = bool(napkins[(i - 1) % n])
        right = bool(napkins[(i + length - 1) % n])
        if left and right:
            kind = IntervalKind.OUTER
        elif left or right:
            kind = IntervalKind.ASYM
        else:
            kind = IntervalKind.INNER
        comps.append(Component(i, length, kind, outer_on_left=left))
    return comps


def _component_sort_key(comp: Component, n: int) -> tuple[int, int]:
    # Outer/asym components hold a napkin neighboring exactly one empty seat,
    # which both built-ins must serve before touching any inner component.
    # Ordering cannot change expectations (components evolve independently),
    # so the tie-break is just the lowest seat index the component contains.
    priority = 1 if comp.kind is IntervalKind.INNER else 0
    lowest = 0 if comp.start + comp.length > n else comp.start
    return (priority, lowest)


def seat_at_label(comp: Component, label: int, n: int) -> int:
    """Lowest seat index of the component carrying ``label``."""
    if comp.kind is IntervalKind.ASYM:
        pos = label if comp.outer_on_left else comp.length - 1 - label
        return (comp.start + pos) % n
    a = (comp.start + label) % n
    b = (comp.start + comp.length - 1 - label) % n
    return min(a, b)


def choose_seat(strategy: IntervallicStrategy, table: "TableState") -> int:
    """Concrete seat where ``strategy`` places the next diner.

    On the fully empty (rotation-symmetric) table every seat is equivalent and
    seat 0 is returned.  Otherwise the serving order over components and the
    same-label tie-break are deterministic, so runs replay exactly.
    """
    if table.occupied_count == table.n:
        raise ValueError("table is full")
    if table.occupied_count == 0:
        return 0
    comps = table_components(table)
    comp = min(comps, key=lambda c: _component_sort_key(c, table.n))
    label = strategy.decide(comp.kind, comp.length)
    if not 0 <= label <= max_label(comp.kind, comp.length):
        raise ValueError(
            f"strategy {strategy.name!r} returned label {label} "
            f"for {comp.kind.value} {comp.length}"
        )
    return seat_at_label(comp, label, table.n)
