"""LSB replacement embedding and extraction of framed messages."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import derive_seed, frame_message, full_permutation, permute_positions, unframe
from .errors import CapacityExceeded, CorruptHeader
from .raster import RgbImage

HEADER_BITS = 32


@dataclass(frozen=True)
class StegoResult:
    """Embedding output: the stego image, the position plan, and the set of
    byte positions whose LSB now carries frame bits."""

    stego: RgbImage
    plan: np.ndarray
    protected: frozenset[int]


def capacity_bits(image: RgbImage) -> int:
    """Payload bits available once the 32-bit header is reserved."""
    return max(0, image.n_bytes - HEADER_BITS)


def embed(cover: RgbImage, message: bytes, key: str) -> StegoResult:
    """Hide ``message`` in the LSBs of ``cover`` at key-selected positions.

    Each frame bit replaces bit 0 of one channel byte; all other bits are
    untouched, so every changed byte moves by exactly 1.
    """
    if 8 * len(message) > capacity_bits(cover):
        raise CapacityExceeded(
            f"{8 * len(message)} payload bits > capacity {capacity_bits(cover)}"
        )
    frame = frame_message(message)
    plan = permute_positions(cover.n_bytes, frame.size, derive_seed(key))
    arr = cover.flat()
    arr[plan] = (arr[plan] & 0xFE) | frame
    return StegoResult(
        stego=RgbImage.from_flat(cover.width, cover.height, arr),
        plan=plan,
        protected=frozenset(plan.tolist()),
    )


def extract(stego: RgbImage, key: str) -> bytes:
    """Recover the embedded message using only the stego image and the key.

    The full position shuffle is regenerated from the key; the first 32
    positions yield the length header, which is validated against the
    image's capacity before the payload is read.
    """
    arr = stego.flat()
    total = stego.n_bytes
    if total < HEADER_BITS:
        raise CorruptHeader(f"image has {total} bytes, header needs {HEADER_BITS}")
    perm = full_permutation(total, derive_seed(key))
    header_bits = arr[perm[:HEADER_BITS]] & 1
    n = int.from_bytes(np.packbits(header_bits).tobytes(), "big")
    if HEADER_BITS + 8 * n > total:
        raise CorruptHeader(
            f"declared payload of {n} bytes exceeds capacity "
            f"{(total - HEADER_BITS) // 8}"
        )
    payload_bits = arr[perm[HEADER_BITS : HEADER_BITS + 8 * n]] & 1
    return unframe(np.concatenate([header_bits, payload_bits]).astype(np.uint8))
