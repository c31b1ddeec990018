"""SplitMix64, used wherever sign patterns or voltages are drawn at random."""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def jump(self, draws: int) -> None:
        """Advance as if ``draws`` outputs had been consumed."""
        self.state = (self.state + draws * GAMMA) & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def bits(self, count: int) -> list[int]:
        """``count`` bits, bit ``i`` taken from bit ``i % 64`` of word ``i // 64``."""
        out: list[int] = []
        while len(out) < count:
            w = self.next()
            out.extend((w >> b) & 1 for b in range(min(64, count - len(out))))
        return out

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            w = self.next()
            if w < limit:
                return w % bound

    def permutation(self, k: int) -> list[int]:
        """Fisher-Yates shuffle of ``range(k)``."""
        p = list(range(k))
        for i in range(k - 1, 0, -1):
            j = self.below(i + 1)
            p[i], p[j] = p[j], p[i]
        return p


def words_per_draw(count: int) -> int:
    return (count + 63) // 64
