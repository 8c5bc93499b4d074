"""Proportion tables and comparison figures.

Proportions are exact rationals rounded half-to-even to four decimal places
and carried as integer ten-thousandths, so CSV output is byte-stable and never
passes through floats.  A small reference CSV of published values for two
strategies outside this package ships alongside (``data/figure2_reference.csv``)
and is kept distinct from computed rows via a ``source`` column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .engine import values_for

SOURCE_COMPUTED = "computed"
SOURCE_PAPER = "paper"


def proportion_4dp(value: Fraction) -> int:
    """Round an exact proportion to integer ten-thousandths, half to even."""
    return round(value * 10**4)


def format_4dp(ten_thousandths: int) -> str:
    return f"{ten_thousandths // 10**4}.{ten_thousandths % 10**4:04d}"


@dataclass(frozen=True)
class FigureRow:
    """One curve point: strategy, table size, and the rounded proportion."""

    strategy: str
    n: int
    ten_thousandths: int
    source: str = SOURCE_COMPUTED

    @property
    def proportion(self) -> Fraction:
        return Fraction(self.ten_thousandths, 10**4)

    @property
    def text(self) -> str:
        return format_4dp(self.ten_thousandths)


def figure2_rows(
    strategies, min_n: int = 3, max_n: int = 50
) -> list[FigureRow]:
    """Computed proportion rows for each strategy over the given table sizes."""
    if min_n < 2:
        raise ValueError("table sizes start at 2")
    rows = []
    for strategy in strategies:
        values = values_for(strategy)
        for n in range(min_n, max_n + 1):
            rows.append(
                FigureRow(strategy.name, n, proportion_4dp(values.table(n) / n))
            )
    return rows


def reference_rows() -> list[FigureRow]:
    """Published rows for the two strategies this package does not compute."""
    text = (
        resources.files("napkin_lab")
        .joinpath("data/figure2_reference.csv")
        .read_text()
    )
    rows = []
    header_seen = False
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            header_seen = True  # strategy,n,proportion,source
            continue
        strategy, n, proportion, source = line.split(",")
        whole, _, frac = proportion.partition(".")
        rows.append(
            FigureRow(strategy, int(n), int(whole) * 10**4 + int(frac.ljust(4, "0")), source)
        )
    return rows


def figure6_table(max_n: int = 7) -> list[dict]:
    """Per-length expected counts under long trap setting, plus the full-table
    column; entries are exact Fractions, None where the quantity is undefined."""
    from .strategies import long_trap_setting

    values = values_for(long_trap_setting())
    rows = []
    for n in range(max_n + 1):
        rows.append({
            "n": n,
            "inner": values.inner(n) if n >= 1 else None,
            "outer": values.outer(n),
            "asym": values.asym(n),
            # One-seat ring: the sole diner takes the sole napkin, so 0.
            # The engine's table() itself only accepts n >= 2.
            "table": values.asym(n - 1) if n >= 1 else None,
        })
    return rows


_SERIES_COLORS = {
    "long-trap-setting": "tab:blue",
    "napkin-shunning": "tab:red",
    "winkler-trap-setting": "tab:green",
    "modified-napkin-shunning": "gold",
}


def render_proportion_plot(rows: list[FigureRow], path) -> None:
    """Render proportion-vs-table-size curves to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_strategy: dict[str, list[FigureRow]] = {}
    for row in rows:
        by_strategy.setdefault(row.strategy, []).append(row)

    fig, ax = plt.subplots(figsize=(9, 4.5))
    for name, pts in by_strategy.items():
        pts = sorted(pts, key=lambda r: r.n)
        xs = [r.n for r in pts]
        ys = [r.ten_thousandths / 10**4 for r in pts]
        style = "o-" if pts and pts[0].source == SOURCE_COMPUTED else "o--"
        ax.plot(xs, ys, style, ms=3, lw=1, label=name,
                color=_SERIES_COLORS.get(name))
    ax.set_xlabel("table size n")
    ax.set_ylabel("proportion of napkinless diners")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
