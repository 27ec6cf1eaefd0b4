"""RS steganalysis: flipping functions, group discrimination, and the
regular/singular statistics that expose LSB replacement.

A group of neighbouring samples is flipped under a mask of per-position
flipping functions; comparing the group's variation before and after
classifies it as regular, singular, or unusable. On a clean image the
regular and singular rates barely move when the mask is negated; LSB
replacement drives the two polarities apart, and that gap is the
detection statistic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import BadMask, GroupTooSmall, LengthMismatch, OutOfRange
from .raster import Channel, RgbImage, channel_plane

DEFAULT_MASK: tuple[int, ...] = (0, 1, 1, 0)
DEFAULT_GROUP_LEN = 4
DEFAULT_THRESHOLD = 10.0


class FlipKind(Enum):
    """Invertible pairing of intensity values."""

    POSITIVE = 1   # swaps 2k <-> 2k+1
    NEGATIVE = -1  # swaps 2k-1 <-> 2k, extends the range to -1 and 256
    ZERO = 0       # identity


class GroupClass(Enum):
    REGULAR = "regular"
    SINGULAR = "singular"
    UNUSABLE = "unusable"


@dataclass(frozen=True)
class ChannelStats:
    """Relative group counts for one channel, as percentages of all groups."""

    r_pos: float
    s_pos: float
    u_pos: float
    r_neg: float
    s_neg: float
    u_neg: float


@dataclass(frozen=True)
class RsStats:
    """Per-channel RS statistics of an image."""

    red: ChannelStats
    green: ChannelStats
    blue: ChannelStats

    def channel(self, ch: Channel) -> ChannelStats:
        return (self.red, self.green, self.blue)[ch.value]

    def items(self) -> Iterable[tuple[Channel, ChannelStats]]:
        return zip(Channel, (self.red, self.green, self.blue))


def flip(value: int, kind: FlipKind) -> int:
    """Apply one flipping function. Domain is -1..256; positive flipping
    additionally requires 0..255 (it is only ever applied to raw bytes)."""
    if not -1 <= value <= 256:
        raise OutOfRange(f"value {value} outside -1..256")
    if kind is FlipKind.POSITIVE:
        if not 0 <= value <= 255:
            raise OutOfRange(f"positive flipping undefined for {value}")
        return value ^ 1
    if kind is FlipKind.NEGATIVE:
        return ((value + 1) ^ 1) - 1
    return value


def variation(group: Sequence[int]) -> int:
    """Sum of absolute consecutive differences; the group discriminator."""
    if len(group) < 2:
        raise GroupTooSmall(f"group of {len(group)} values")
    return int(sum(abs(int(b) - int(a)) for a, b in zip(group, group[1:])))


def negate_mask(mask: Sequence[int]) -> tuple[int, ...]:
    return tuple(-int(m) for m in mask)


def _check_mask(mask: Sequence[int]) -> tuple[int, ...]:
    mask = tuple(int(m) for m in mask)
    if any(m not in (-1, 0, 1) for m in mask):
        raise BadMask(f"mask entries must be -1, 0 or +1, got {mask}")
    return mask


def classify_group(group: Sequence[int], mask: Sequence[int]) -> GroupClass:
    """Regular if masked flipping raises the variation, singular if it
    lowers it, unusable if unchanged."""
    mask = _check_mask(mask)
    if len(group) != len(mask):
        raise LengthMismatch(f"group of {len(group)} values, mask of {len(mask)}")
    flipped = [flip(int(v), FlipKind(m)) for v, m in zip(group, mask)]
    before = variation([int(v) for v in group])
    after = variation(flipped)
    if after > before:
        return GroupClass.REGULAR
    if after < before:
        return GroupClass.SINGULAR
    return GroupClass.UNUSABLE


# Vectorized core, shared with the GA fitness evaluator.

def flip_groups(groups: np.ndarray, mask: Sequence[int]) -> np.ndarray:
    """Apply the mask's flipping functions column-wise to int32 groups
    shaped (..., group_len)."""
    out = groups.copy()
    for i, m in enumerate(mask):
        if m == 1:
            out[..., i] = groups[..., i] ^ 1
        elif m == -1:
            out[..., i] = ((groups[..., i] + 1) ^ 1) - 1
    return out


def variation_rows(groups: np.ndarray) -> np.ndarray:
    """Variation along the last axis."""
    return np.abs(np.diff(groups, axis=-1)).sum(axis=-1)


def class_counts(groups: np.ndarray, mask: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Regular and singular counts over the group axis.

    ``groups`` is int32 shaped (..., n_groups, group_len); returns two
    arrays shaped (...,) counting groups whose variation rose / fell.
    """
    before = variation_rows(groups)
    after = variation_rows(flip_groups(groups, mask))
    return (after > before).sum(axis=-1), (after < before).sum(axis=-1)


def plane_groups(plane: np.ndarray, group_len: int) -> np.ndarray:
    """Cut a flat plane (or batch of planes) into consecutive groups,
    discarding the trailing remainder. Returns int32 (..., G, group_len)."""
    n = plane.shape[-1]
    n_groups = n // group_len
    trimmed = plane[..., : n_groups * group_len]
    return trimmed.reshape(*plane.shape[:-1], n_groups, group_len).astype(np.int32)


def _channel_stats(plane: np.ndarray, mask: tuple[int, ...], group_len: int) -> ChannelStats:
    groups = plane_groups(plane, group_len)
    total = groups.shape[-2]
    if total == 0:
        return ChannelStats(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    r_pos, s_pos = class_counts(groups, mask)
    r_neg, s_neg = class_counts(groups, negate_mask(mask))
    scale = 100.0 / total
    return ChannelStats(
        r_pos=float(r_pos) * scale,
        s_pos=float(s_pos) * scale,
        u_pos=float(total - r_pos - s_pos) * scale,
        r_neg=float(r_neg) * scale,
        s_neg=float(s_neg) * scale,
        u_neg=float(total - r_neg - s_neg) * scale,
    )


def rs_statistics(
    image: RgbImage,
    mask: Sequence[int] = DEFAULT_MASK,
    group_len: int = DEFAULT_GROUP_LEN,
) -> RsStats:
    """Per-channel RS statistics.

    Each channel plane is cut row-major into consecutive non-overlapping
    groups of ``group_len`` samples (trailing remainder discarded) and
    every group is classified under the mask and its negation. Planes
    shorter than one group report zero everywhere.
    """
    mask = _check_mask(mask)
    if group_len < 2:
        raise BadMask(f"group_len {group_len} < 2")
    if len(mask) != group_len:
        raise BadMask(f"mask of {len(mask)} entries, group_len {group_len}")
    per = [
        _channel_stats(channel_plane(image, ch), mask, group_len)
        for ch in Channel
    ]
    return RsStats(red=per[0], green=per[1], blue=per[2])


def rs_gap(stats: RsStats) -> dict[Channel, tuple[float, float]]:
    """Per-channel (|R_M - R_-M|, |S_M - S_-M|) in percentage points."""
    return {
        ch: (abs(cs.r_pos - cs.r_neg), abs(cs.s_pos - cs.s_neg))
        for ch, cs in stats.items()
    }


def detect(stats: RsStats, threshold: float = DEFAULT_THRESHOLD) -> dict[Channel, bool]:
    """Flag a channel when either gap component reaches the threshold."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    return {
        ch: (gap_r >= threshold or gap_s >= threshold)
        for ch, (gap_r, gap_s) in rs_gap(stats).items()
    }
