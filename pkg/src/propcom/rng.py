"""Seedable, portable 64-bit random number generation.

The generator is SplitMix64 (Steele, Lea & Flood's mixing constants): a
single 64-bit state advanced by the golden-gamma increment and finalized
with two xor-multiply rounds. It is deliberately simple so the compiled
kernel can reproduce the exact same stream in C; every sampler in this
package is bit-identical across the compiled and pure-Python backends.

Stream splitting: worker ``i`` of a computation seeded with ``master``
uses ``spawn_seed(master, i) = mix64(master XOR mix64((i + 1) * GOLDEN))``.
Children of distinct indices are decorrelated hash-style; results merged
from workers are therefore reproducible regardless of scheduling.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit hash."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def spawn_seed(master: int, index: int) -> int:
    """Derive the seed of child stream ``index`` from a master seed."""
    return mix64((master & _MASK) ^ mix64(((index + 1) * GOLDEN) & _MASK))


class SplitMix64:
    """SplitMix64 generator over a single 64-bit word of state."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & _MASK
        return mix64(self.state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection (no modulo bias)."""
        threshold = (1 << 64) % n
        while True:
            x = self.next_u64()
            if x >= threshold:
                return x % n

    def sample_committee(self, m: int, k: int) -> tuple[int, ...]:
        """Uniform size-k subset of {0..m-1} by partial Fisher-Yates.

        Exactly k calls to :meth:`randbelow` (plus rejections), so the
        stream position after a draw is backend-independent.
        """
        perm = list(range(m))
        for j in range(k):
            r = j + self.randbelow(m - j)
            perm[j], perm[r] = perm[r], perm[j]
        return tuple(sorted(perm[:k]))

    def bernoulli(self, numerator: int, denominator: int) -> bool:
        """Exact Bernoulli(numerator/denominator) trial."""
        return self.next_u64() * denominator < numerator << 64

    def uniform01(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def spawn(self, index: int) -> "SplitMix64":
        return SplitMix64(spawn_seed(self.state, index))
