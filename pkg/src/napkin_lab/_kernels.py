"""Jitted trial loops for the Monte Carlo path.

These kernels mirror ``simulate.run_once`` / ``strategies.choose_seat``
step for step, including the coin-stream derivation from ``rng``; the test
suite pins bit-identical outcomes between the two paths.  Everything here is
an internal detail behind ``simulate.monte_carlo``.
"""

from __future__ import annotations

import numpy as np

from .rng import GOLDEN, MASK64, MIX_MUL_1, MIX_MUL_2

try:
    import numba
    from numba import njit, prange

    AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only where numba is absent
    numba = None
    AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap

    prange = range

_GOLDEN = np.uint64(GOLDEN)
_MUL1 = np.uint64(MIX_MUL_1)
_MUL2 = np.uint64(MIX_MUL_2)


@njit(cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * _MUL1
    z = (z ^ (z >> np.uint64(27))) * _MUL2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _one_trial(n, dec_inner, dec_outer, dec_asym, state):
    occ = np.zeros(n, np.uint8)
    nap = np.ones(n, np.uint8)
    napkinless = 0
    for step in range(n):
        if step == 0:
            s = 0  # fully empty ring: every seat equivalent
        else:
            best_pri = 2
            best_low = n
            s = -1
            for i in range(n):
                if occ[i] != 0 or occ[(i - 1) % n] == 0:
                    continue
                length = 1
                while occ[(i + length) % n] == 0:
                    length += 1
                left = nap[(i - 1) % n]
                right = nap[(i + length - 1) % n]
                if left and right:
                    label = dec_outer[length]
                    pri = 0
                elif left or right:
                    label = dec_asym[length]
                    pri = 0
                else:
                    label = dec_inner[length]
                    pri = 1
                low = 0 if i + length > n else i
                if pri < best_pri or (pri == best_pri and low < best_low):
                    if left != right:  # asymmetric: label counts from the napkin end
                        pos = label if left else length - 1 - label
                        seat = (i + pos) % n
                    else:
                        a = (i + label) % n
                        b = (i + length - 1 - label) % n
                        seat = a if a < b else b
                    best_pri = pri
                    best_low = low
                    s = seat
        left_nap = (s - 1) % n
        right_nap = s
        if nap[left_nap] and nap[right_nap]:
            state = (state + _GOLDEN) & np.uint64(MASK64)
            if _mix64(state) >> np.uint64(63):
                nap[right_nap] = 0
            else:
                nap[left_nap] = 0
        elif nap[left_nap]:
            nap[left_nap] = 0
        elif nap[right_nap]:
            nap[right_nap] = 0
        else:
            napkinless += 1
        occ[s] = 1
    return napkinless


@njit(cache=True, parallel=True)
def _trial_loop(n, dec_inner, dec_outer, dec_asym, master, trials, out):
    for t in prange(trials):
        start = _mix64((master + (np.uint64(t) + np.uint64(1)) * _GOLDEN) & np.uint64(MASK64))
        out[t] = _one_trial(n, dec_inner, dec_outer, dec_asym, start)


def run_trials(n, tables, master_seed, trials, threads=None):
    """Trial outcome array for trials 0..trials-1; independent of worker count."""
    if not AVAILABLE:
        raise RuntimeError("numba is not available")
    limit = numba.config.NUMBA_NUM_THREADS
    requested = limit if threads is None else threads
    numba.set_num_threads(max(1, min(requested, limit)))
    dec_inner, dec_outer, dec_asym = tables
    out = np.zeros(trials, np.uint8)
    _trial_loop(n, dec_inner, dec_outer, dec_asym, np.uint64(master_seed & MASK64), trials, out)
    return out


def warm_up():
    """Force kernel compilation so timed runs exclude the one-off JIT cost."""
    if AVAILABLE:
        one = np.zeros(3, np.int64)
        run_trials(3, (one, one, one), 0, 2, 1)
