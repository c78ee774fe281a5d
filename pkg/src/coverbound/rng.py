"""Deterministic pseudo-random numbers (splitmix64).

All randomness in the package flows through this generator so that runs are
reproducible from an explicit 64-bit seed on any platform. The algorithm is
Steele, Lea and Flood's splitmix64: the state advances by the golden-ratio
increment 0x9E3779B97F4A7C15 and the output is a two-round xor-multiply mix
of the state. The compiled chain-simulation kernel embeds the identical
recurrence so both backends produce bit-identical streams.
"""

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Splitmix64 stream seeded with an explicit 64-bit integer."""

    def __init__(self, seed):
        self._state = int(seed) & _MASK

    def next_uint64(self):
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def random(self):
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def randint(self, n):
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        k = int(self.random() * n)
        return k if k < n else n - 1

    def uniform(self, lo, hi):
        return lo + (hi - lo) * self.random()

    def shuffle(self, seq):
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randint(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def choice_weighted(self, cumulative):
        """Index of the first cumulative weight exceeding a fresh uniform draw.

        `cumulative` is a nondecreasing sequence ending at (approximately) 1.
        """
        u = self.random()
        lo, hi = 0, len(cumulative)
        while lo < hi:
            mid = (lo + hi) // 2
            if cumulative[mid] > u:
                hi = mid
            else:
                lo = mid + 1
        return min(lo, len(cumulative) - 1)
