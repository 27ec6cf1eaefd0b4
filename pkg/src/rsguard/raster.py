"""24-bit RGB raster type and bit-exact binary PPM (P6) I/O.

PPM is the interchange format because it is uncompressed and byte-exact;
LSB work cannot survive lossy or filtered codecs. Output is canonical:
``P6\\n{w} {h}\\n255\\n`` followed by raw RGB bytes, no comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadMagic, MalformedHeader, Truncated, UnsupportedMaxval


class Channel(Enum):
    """Colour channel, value == byte offset inside a pixel."""

    RED = 0
    GREEN = 1
    BLUE = 2


@dataclass(frozen=True)
class RgbImage:
    """Immutable row-major raster of 8-bit RGB triples.

    ``data`` holds 3 bytes per pixel in R,G,B order, rows top to bottom.
    """

    width: int
    height: int
    data: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be >= 1")
        if len(self.data) != 3 * self.width * self.height:
            raise ValueError(
                f"expected {3 * self.width * self.height} data bytes, "
                f"got {len(self.data)}"
            )

    @property
    def n_bytes(self) -> int:
        return 3 * self.width * self.height

    def to_array(self) -> np.ndarray:
        """Return a (height, width, 3) uint8 copy."""
        return (
            np.frombuffer(self.data, dtype=np.uint8)
            .reshape(self.height, self.width, 3)
            .copy()
        )

    def flat(self) -> np.ndarray:
        """Return the raw byte sequence as a flat uint8 copy."""
        return np.frombuffer(self.data, dtype=np.uint8).copy()

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "RgbImage":
        """Build an image from a (height, width, 3) uint8 array."""
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError("array must have shape (height, width, 3)")
        if arr.dtype != np.uint8:
            raise ValueError("array must be uint8")
        h, w = arr.shape[:2]
        return cls(width=w, height=h, data=arr.tobytes())

    @classmethod
    def from_flat(cls, width: int, height: int, flat: np.ndarray) -> "RgbImage":
        """Build an image from a flat uint8 byte array of length 3*w*h."""
        if flat.dtype != np.uint8 or flat.ndim != 1:
            raise ValueError("flat must be a 1-D uint8 array")
        return cls(width=width, height=height, data=flat.tobytes())


_WHITESPACE = b" \t\n\r\x0b\x0c"


def _next_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    # Skip whitespace and '#' comment lines between header tokens.
    n = len(buf)
    while pos < n:
        c = buf[pos : pos + 1]
        if c in b"#":
            while pos < n and buf[pos : pos + 1] != b"\n":
                pos += 1
        elif c in _WHITESPACE:
            pos += 1
        else:
            break
    start = pos
    while pos < n and buf[pos : pos + 1] not in _WHITESPACE and buf[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise MalformedHeader("unexpected end of header")
    return buf[start:pos], pos


def load_ppm(raw: bytes) -> RgbImage:
    """Parse a binary PPM (P6) byte string into an RgbImage.

    Header comments are accepted; maxval must be 255; exactly one
    whitespace byte separates the header from the pixel payload.
    """
    if raw[:2] != b"P6":
        raise BadMagic("not a P6 PPM file")
    pos = 2
    fields = []
    for _ in range(3):
        tok, pos = _next_token(raw, pos)
        try:
            fields.append(int(tok))
        except ValueError:
            raise MalformedHeader(f"non-numeric header token {tok!r}") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MalformedHeader(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxval(f"maxval {maxval} (only 255 supported)")
    if pos >= len(raw) or raw[pos : pos + 1] not in _WHITESPACE:
        raise MalformedHeader("missing whitespace after maxval")
    pos += 1
    need = 3 * width * height
    payload = raw[pos : pos + need]
    if len(payload) < need:
        raise Truncated(f"need {need} payload bytes, got {len(payload)}")
    return RgbImage(width=width, height=height, data=payload)


def save_ppm(image: RgbImage) -> bytes:
    """Serialize to the canonical P6 form (unique byte representation)."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.data


def channel_plane(image: RgbImage, channel: Channel) -> np.ndarray:
    """Extract one channel as a flat uint8 array of width*height bytes."""
    return np.frombuffer(image.data, dtype=np.uint8)[channel.value :: 3].copy()
