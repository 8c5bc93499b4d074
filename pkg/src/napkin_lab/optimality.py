"""Independent optimality verification.

Two routes, deliberately at different abstraction levels:

* ``optimal_interval_values`` runs a Bellman recursion over component shapes,
  maximizing the split-averaged value over every label, and
  ``verify_strategy_optimal`` checks that a strategy attains that maximum
  everywhere.  Internally the tables hold integers scaled by 2^length (every
  value at length n is a dyadic rational with denominator dividing 2^n), which
  keeps the quadratic label scan cheap at lengths in the thousands.

* ``raw_table_optimum`` ignores the component abstraction entirely and solves
  the full-information game on literal (occupancy, napkin) bit-vectors by
  expectimax with memoization on the canonical form under rotation and
  reflection.  It ranges over *all* adaptive strategies, so agreement with the
  interval route validates the whole decomposition.

``verify_inequalities`` sweeps the exact-arithmetic inequality and
monotonicity properties that underpin the optimality argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .engine import correction, values_for
from .intervals import IntervalKind
from .strategies import IntervallicStrategy, long_trap_setting

RAW_TABLE_MAX = 12


@dataclass(frozen=True)
class OptimalTables:
    """Best achievable expected napkinless counts per kind, indexed by length.

    ``v_inner[0]`` is None (the shape does not exist); all other entries are
    exact dyadic rationals.
    """

    max_length: int
    v_inner: tuple
    v_outer: tuple
    v_asym: tuple

    def value(self, kind: IntervalKind, length: int) -> Fraction:
        if kind is IntervalKind.INNER:
            return self.v_inner[length]
        if kind is IntervalKind.OUTER:
            return self.v_outer[length]
        return self.v_asym[length]


def _optimal_scaled(max_length: int):
    # vi[n] etc. hold value * 2^n; ia/oa are the piece-sum helpers
    # (inner+asym, outer+asym) that every split expression averages.
    vi = [0, 2]
    vo = [0, 0]
    va = [0, 0]
    ia = [0, 2]  # ia[0] is never read: inner pieces always have length >= 1
    oa = [0, 0]
    for n in range(2, max_length + 1):
        best_i = vi[n - 1] << 1  # label 0: deterministic shrink
        for m in range(1, (n - 1) // 2 + 1):
            k = n - m - 1
            cand = (ia[m] << k) + (ia[k] << m)
            if cand > best_i:
                best_i = cand
        best_o = (oa[0] << (n - 1)) + (oa[n - 1] << 0)
        for m in range(1, (n - 1) // 2 + 1):
            k = n - m - 1
            cand = (oa[m] << k) + (oa[k] << m)
            if cand > best_o:
                best_o = cand
        best_a = va[n - 1] << 1  # label n-1: deterministic shrink
        for m in range(0, n - 1):
            k = n - m - 1
            cand = (oa[m] << k) + (ia[k] << m)
            if cand > best_a:
                best_a = cand
        vi.append(best_i)
        vo.append(best_o)
        va.append(best_a)
        ia.append(best_i + best_a)
        oa.append(best_o + best_a)
    return vi, vo, va


def optimal_interval_values(max_length: int) -> OptimalTables:
    """Maximize the expected napkinless count over every label, per kind and length."""
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    vi, vo, va = _optimal_scaled(max_length)
    return OptimalTables(
        max_length=max_length,
        v_inner=(None,) + tuple(Fraction(vi[n], 1 << n) for n in range(1, max_length + 1)),
        v_outer=tuple(Fraction(vo[n], 1 << n) for n in range(max_length + 1)),
        v_asym=tuple(Fraction(va[n], 1 << n) for n in range(max_length + 1)),
    )


@dataclass(frozen=True)
class Divergence:
    kind: IntervalKind
    length: int
    strategy_value: Fraction
    optimal_value: Fraction


@dataclass(frozen=True)
class OptimalityReport:
    strategy: str
    max_length: int
    equal: bool
    first_divergence: Divergence | None


def verify_strategy_optimal(
    max_length: int,
    strategy: IntervallicStrategy | None = None,
    tables: OptimalTables | None = None,
) -> OptimalityReport:
    """Compare a strategy's exact values against the Bellman optimum.

    Scans lengths in increasing order (kinds inner, outer, asym within each)
    and reports the first divergence instead of raising.
    """
    strategy = strategy or long_trap_setting()
    if tables is None or tables.max_length < max_length:
        tables = optimal_interval_values(max_length)
    values = values_for(strategy)
    getters = (
        (IntervalKind.INNER, values.inner),
        (IntervalKind.OUTER, values.outer),
        (IntervalKind.ASYM, values.asym),
    )
    for n in range(1, max_length + 1):
        for kind, get in getters:
            actual = get(n)
            best = tables.value(kind, n)
            if actual != best:
                return OptimalityReport(
                    strategy.name, max_length, False,
                    Divergence(kind, n, actual, best),
                )
    return OptimalityReport(strategy.name, max_length, True, None)


# ---------------------------------------------------------------------------
# Raw-table expectimax
# ---------------------------------------------------------------------------

_transform_cache: dict[int, list] = {}


def _transforms(n: int):
    """Per-symmetry mask lookup tables: 2n rotations/reflections of the ring.

    Reflection maps seat i -> -i, which carries napkin j (between seats j and
    j+1) to napkin -j-1; composing with rotations covers the dihedral group.
    """
    cached = _transform_cache.get(n)
    if cached is not None:
        return cached
    perms = []
    for r in range(n):
        perms.append(([(i + r) % n for i in range(n)], [(j + r) % n for j in range(n)]))
        perms.append(([(r - i) % n for i in range(n)], [(r - j - 1) % n for j in range(n)]))
    tables = []
    for seat_perm, nap_perm in perms:
        occ_tab = [0] * (1 << n)
        nap_tab = [0] * (1 << n)
        for mask in range(1 << n):
            occ_img = 0
            nap_img = 0
            m = mask
            idx = 0
            while m:
                if m & 1:
                    occ_img |= 1 << seat_perm[idx]
                    nap_img |= 1 << nap_perm[idx]
                m >>= 1
                idx += 1
            occ_tab[mask] = occ_img
            nap_tab[mask] = nap_img
        tables.append((occ_tab, nap_tab))
    _transform_cache[n] = tables
    return tables


def raw_table_optimum(n: int, canonicalize: bool = True) -> Fraction:
    """Value of the full-information seating game on a literal n-seat table.

    Expectimax over (occupancy, napkins) states: the maximum over empty seats
    of the expectation over the diner's napkin choice, +1 whenever a diner
    finds both neighbors bare.  ``canonicalize=False`` memoizes raw states
    instead (slower; kept as an oracle for the symmetry reduction).
    """
    if not 2 <= n <= RAW_TABLE_MAX:
        raise ValueError(f"raw-table search supports 2 <= n <= {RAW_TABLE_MAX}")
    full = (1 << n) - 1
    tables = _transforms(n) if canonicalize else None
    memo: dict[int, Fraction] = {}
    half = Fraction(1, 2)
    one = Fraction(1)

    def key_of(occ: int, nap: int) -> int:
        if tables is None:
            return (occ << n) | nap
        best = None
        for occ_tab, nap_tab in tables:
            v = (occ_tab[occ] << n) | nap_tab[nap]
            if best is None or v < best:
                best = v
        return best

    def value(occ: int, nap: int) -> Fraction:
        if occ == full:
            return Fraction(0)
        key = key_of(occ, nap)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = None
        for s in range(n):
            if occ >> s & 1:
                continue
            occ2 = occ | (1 << s)
            left = 1 << ((s - 1) % n)
            right = 1 << s
            if nap & left and nap & right:
                v = half * (value(occ2, nap & ~left) + value(occ2, nap & ~right))
            elif nap & left:
                v = value(occ2, nap & ~left)
            elif nap & right:
                v = value(occ2, nap & ~right)
            else:
                v = one + value(occ2, nap)
            if best is None or v > best:
                best = v
        memo[key] = best
        return best

    return value(0, full)


# ---------------------------------------------------------------------------
# Inequality and monotonicity sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckRecord:
    check: str
    n: int
    m: int | None
    lhs: Fraction
    rhs: Fraction
    passed: bool


def inequality_records(max_n: int) -> Iterator[CheckRecord]:
    """Generate every exact check lhs >= rhs (or bound) up to ``max_n``.

    Covers, for the long-trap-setting values: the split-dominance inequalities
    for all three kinds and all admissible m, the four monotonicity relations,
    and the correction-sequence growth bound.
    """
    if max_n < 3:
        raise ValueError("max_n must be >= 3")
    vals = values_for(long_trap_setting())
    vals.inner(max_n + 1)  # fill the cache once, sequentially
    i, o, a = vals.inner, vals.outer, vals.asym

    for n in range(1, max_n + 1):
        lhs = Fraction(abs(3 * correction(n) + correction(n + 1)))
        yield CheckRecord("correction-bound", n, None, lhs, Fraction(2**n), lhs <= 2**n)

    for n in range(3, max_n + 1):
        for m in range(1, n - 1):
            rhs = (i(m) + a(m) + i(n - m - 1) + a(n - m - 1)) / 2
            yield CheckRecord("split-dominance-inner", n, m, i(n), rhs, i(n) >= rhs)

    for n in range(1, max_n + 1):
        for m in range(0, n):
            rhs = (o(m) + a(m) + o(n - m - 1) + a(n - m - 1)) / 2
            yield CheckRecord("split-dominance-outer", n, m, o(n), rhs, o(n) >= rhs)

    for n in range(1, max_n + 1):
        for m in range(0, n - 1):
            rhs = (o(m) + a(m) + i(n - m - 1) + a(n - m - 1)) / 2
            yield CheckRecord("split-dominance-asym", n, m, a(n), rhs, a(n) >= rhs)

    for n in range(1, max_n + 1):
        yield CheckRecord("monotone-inner-length", n, None, i(n + 1), i(n), i(n + 1) >= i(n))
        yield CheckRecord("inner-vs-asym", n, None, i(n), a(n), i(n) >= a(n))
        yield CheckRecord("asym-vs-outer", n, None, a(n), o(n), a(n) >= o(n))
        yield CheckRecord("monotone-asym-length", n, None, a(n), a(n - 1), a(n) >= a(n - 1))


@dataclass(frozen=True)
class InequalityReport:
    max_n: int
    checked: dict
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_inequalities(max_n: int) -> InequalityReport:
    """Run the full sweep, keeping per-check counts and any violations."""
    checked: dict[str, int] = {}
    violations = []
    for rec in inequality_records(max_n):
        checked[rec.check] = checked.get(rec.check, 0) + 1
        if not rec.passed:
            violations.append(rec)
    return InequalityReport(max_n=max_n, checked=checked, violations=tuple(violations))
