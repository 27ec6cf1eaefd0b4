"""LSB image steganography with RS steganalysis and GA hardening.

The pipeline: ``embed`` hides a framed message in key-selected LSBs of a
24-bit image, ``rs_statistics``/``detect`` measure how visible that is to
RS steganalysis, and ``harden`` evolves the non-payload bits until the
statistics look clean again. ``quality`` reports the visual cost.
"""

from .codec import SplitMix64, derive_seed, frame_message, next_u64, permute_positions, unframe
from .embedder import StegoResult, capacity_bits, embed, extract
from .ga_optimizer import Block, Candidate, GaConfig, block_partition, harden, optimize_block
from .metrics import QualityReport, quality
from .raster import Channel, RgbImage, channel_plane, load_ppm, save_ppm
from .rs_analysis import (
    ChannelStats,
    FlipKind,
    GroupClass,
    RsStats,
    classify_group,
    detect,
    flip,
    rs_gap,
    rs_statistics,
    variation,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "Candidate",
    "Channel",
    "ChannelStats",
    "FlipKind",
    "GaConfig",
    "GroupClass",
    "QualityReport",
    "RgbImage",
    "RsStats",
    "SplitMix64",
    "StegoResult",
    "block_partition",
    "capacity_bits",
    "channel_plane",
    "classify_group",
    "derive_seed",
    "detect",
    "embed",
    "extract",
    "flip",
    "frame_message",
    "harden",
    "load_ppm",
    "next_u64",
    "optimize_block",
    "permute_positions",
    "quality",
    "rs_gap",
    "rs_statistics",
    "save_ppm",
    "unframe",
    "variation",
]
