"""Reproducible per-trial random streams.

SplitMix64 (Steele, Lea & Flood; the generator behind the JDK's
SplittableRandom): a 64-bit Weyl sequence pushed through a murmur-style
finalizer.  It is chosen because the identical five-line core runs in pure
Python and inside jitted kernels, giving bit-identical coin streams on every
platform, and because independent streams can be derived statelessly.

Stream derivation, fixed by contract:

* trial t of a run with master seed s starts from state
  ``mix64((s + (t + 1) * GOLDEN) mod 2**64)``;
* each draw advances the state by GOLDEN and outputs ``mix64(state)``;
* a coin flip is the top bit of the next output.

Trials therefore depend only on (master seed, trial index), never on execution
order or worker count.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX_MUL_1 = 0xBF58476D1CE4E5B9
MIX_MUL_2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 output finalizer on a 64-bit state."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Starting state of trial ``trial_index`` under ``master_seed``."""
    return mix64((master_seed + (trial_index + 1) * GOLDEN) & MASK64)


class SplitMix64:
    """Sequential SplitMix64 stream from an explicit 64-bit starting state."""

    def __init__(self, state: int):
        self.state = state & MASK64

    @classmethod
    def for_trial(cls, master_seed: int, trial_index: int) -> "SplitMix64":
        return cls(trial_seed(master_seed, trial_index))

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def coin(self) -> int:
        """Fair coin: 0 or 1."""
        return self.next_u64() >> 63
