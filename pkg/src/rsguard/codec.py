"""Message framing and keyed pseudorandom position selection.

Everything here is deterministic from the text key so that an embedding
can be reproduced bit-for-bit on any platform: the key is hashed with
FNV-1a 64, the hash seeds a SplitMix64 stream, and the stream drives a
Fisher-Yates shuffle of the image's byte positions.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import MessageTooLong, NeedTooLarge, Truncated

_MASK64 = (1 << 64) - 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x00000100000001B3

_SM64_GOLDEN = 0x9E3779B97F4A7C15
_SM64_MIX1 = 0xBF58476D1CE4E5B9
_SM64_MIX2 = 0x94D049BB133111EB


def frame_message(message: bytes) -> np.ndarray:
    """Turn a message into its bit frame: 32-bit big-endian byte count,
    then payload bytes most-significant-bit first. Returns a uint8 0/1 array.
    """
    if len(message) >= 1 << 32:
        raise MessageTooLong(f"{len(message)} bytes exceed the 32-bit header")
    header = struct.pack(">I", len(message))
    return np.unpackbits(np.frombuffer(header + bytes(message), dtype=np.uint8))


def unframe(bits: np.ndarray) -> bytes:
    """Inverse of frame_message: read the count header, return the payload."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size < 32:
        raise Truncated(f"{bits.size} bits, header alone needs 32")
    n = int.from_bytes(np.packbits(bits[:32]).tobytes(), "big")
    if bits.size < 32 + 8 * n:
        raise Truncated(f"header declares {n} bytes, only {bits.size - 32} payload bits")
    return np.packbits(bits[32 : 32 + 8 * n]).tobytes()


def derive_seed(key: str) -> int:
    """FNV-1a 64-bit hash of the key's UTF-8 bytes."""
    state = _FNV_OFFSET
    for b in key.encode("utf-8"):
        state = ((state ^ b) * _FNV_PRIME) & _MASK64
    return state


def next_u64(state: int) -> tuple[int, int]:
    """One SplitMix64 step: returns (new state, output). Pure, exact."""
    state = (state + _SM64_GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _SM64_MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _SM64_MIX2) & _MASK64
    return state, (z ^ (z >> 31)) & _MASK64


class SplitMix64:
    """SplitMix64 stream with a vectorized bulk draw.

    ``next_array(n)`` yields exactly the same values as n calls of
    ``next_u64``; the state advance is a plain addition, so the whole
    batch is computable in one shot with wrapping uint64 arithmetic.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state, value = next_u64(self.state)
        return value

    def next_array(self, n: int) -> np.ndarray:
        if n == 0:
            return np.empty(0, dtype=np.uint64)
        steps = np.arange(1, n + 1, dtype=np.uint64)
        z = np.uint64(self.state) + np.uint64(_SM64_GOLDEN) * steps
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_SM64_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_SM64_MIX2)
        self.state = (self.state + n * _SM64_GOLDEN) & _MASK64
        return z ^ (z >> np.uint64(31))

    def below(self, n: int) -> int:
        """Draw in [0, n) by modulo reduction (documented slight bias)."""
        return self.next_u64() % n

    def chance_mask(self, count: int, rate: float) -> np.ndarray:
        """Boolean array: each entry True with probability ``rate``.

        Always consumes ``count`` draws and compares against an integer
        threshold, so results are exact and platform independent.
        """
        draws = self.next_array(count)
        if rate <= 0.0:
            return np.zeros(count, dtype=bool)
        if rate >= 1.0:
            return np.ones(count, dtype=bool)
        return draws < np.uint64(int(rate * (1 << 64)))


def full_permutation(total: int, seed: int) -> np.ndarray:
    """Fisher-Yates shuffle of [0, total) driven by SplitMix64(seed).

    Step i (from total-1 down to 1) swaps position i with draw % (i+1).
    Draws are batched through the vectorized stream; the swap loop itself
    is sequential by nature.
    """
    if total <= 0:
        return np.empty(0, dtype=np.int64)
    if total == 1:
        return np.zeros(1, dtype=np.int64)
    draws = SplitMix64(seed).next_array(total - 1)
    js = (draws % np.arange(total, 1, -1, dtype=np.uint64)).tolist()
    perm = list(range(total))
    i = total - 1
    for j in js:
        perm[i], perm[j] = perm[j], perm[i]
        i -= 1
    return np.asarray(perm, dtype=np.int64)


def permute_positions(total: int, needed: int, seed: int) -> np.ndarray:
    """First ``needed`` entries of the seeded shuffle of [0, total)."""
    if needed > total:
        raise NeedTooLarge(f"need {needed} positions out of {total}")
    return full_permutation(total, seed)[:needed]
