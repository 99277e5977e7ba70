"""Deterministic 64-bit PRNG for all sampled verification families.

The generator is splitmix-style and its constants are part of the interface:
state update adds 0x9E3779B97F4A7C15; the output mix multiplies by
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB between xor-shifts of 30, 27 and
31 bits.  Any implementation following this recipe reproduces the same
sampled families and hence the same violation witnesses.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 with the canonical constants; one 64-bit word per step."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection from 64-bit words."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            w = self.next_u64()
            if w < limit:
                return w % n

    def mask_bits(self, nbits: int) -> int:
        """A random nbits-wide bitmask.

        Words are consumed little-endian: bit j of word w covers position
        64*w + j, and the final word is truncated to the remaining width.
        """
        mask = 0
        filled = 0
        while filled < nbits:
            mask |= self.next_u64() << filled
            filled += 64
        return mask & ((1 << nbits) - 1)

    def nonempty_mask(self, nbits: int) -> int:
        """Like mask_bits, redrawing whole masks until a non-zero one appears."""
        while True:
            mask = self.mask_bits(nbits)
            if mask:
                return mask
