"""Full-reference quality measures between a cover and a stego image.

All five measures pool the three channels into one sum and report a
single scalar per image pair. Argument order matters for NCC and LMSE:
the cover comes first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .raster import RgbImage

PEAK = 255.0


@dataclass(frozen=True)
class QualityReport:
    aad: float
    mse: float
    lmse: float | None  # None when the cover's Laplacian energy is zero
    psnr: float         # math.inf when the images are identical
    ncc: float

    def to_json_dict(self) -> dict:
        return {
            "aad": self.aad,
            "mse": self.mse,
            "lmse": self.lmse,
            "psnr": "inf" if math.isinf(self.psnr) else self.psnr,
            "ncc": self.ncc,
        }


def _laplacian(plane: np.ndarray) -> np.ndarray:
    # 4-neighbour Laplacian on interior pixels only; empty for planes
    # narrower than 3 in either direction.
    return (
        plane[2:, 1:-1]
        + plane[:-2, 1:-1]
        + plane[1:-1, 2:]
        + plane[1:-1, :-2]
        - 4 * plane[1:-1, 1:-1]
    )


def quality(cover: RgbImage, stego: RgbImage) -> QualityReport:
    """Compute AAD, MSE, LMSE, PSNR and NCC over all 3*w*h bytes."""
    if (cover.width, cover.height) != (stego.width, stego.height):
        raise DimensionMismatch(
            f"cover {cover.width}x{cover.height} vs stego {stego.width}x{stego.height}"
        )
    c = cover.flat().astype(np.int64)
    s = stego.flat().astype(np.int64)
    n = c.size
    diff = c - s

    aad = float(np.abs(diff).sum()) / n
    mse = float((diff * diff).sum()) / n
    psnr = math.inf if mse == 0 else 10.0 * math.log10(PEAK * PEAK / mse)
    ncc_den = float((c * c).sum())
    ncc = float((c * s).sum()) / ncc_den if ncc_den > 0 else math.nan

    lap_num = 0
    lap_den = 0
    carr = cover.to_array().astype(np.int64)
    sarr = stego.to_array().astype(np.int64)
    for ch in range(3):
        lc = _laplacian(carr[:, :, ch])
        ls = _laplacian(sarr[:, :, ch])
        lap_num += int(((lc - ls) ** 2).sum())
        lap_den += int((lc * lc).sum())
    lmse = lap_num / lap_den if lap_den > 0 else None

    return QualityReport(aad=aad, mse=mse, lmse=lmse, psnr=psnr, ncc=ncc)
