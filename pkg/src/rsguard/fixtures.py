"""Bundled 256x256 test scenes with natural-image statistics.

Real photographs cannot be redistributed here, so the corpus is synthetic:
smooth low-frequency content (blobs, ridges, filtered noise fields) plus
small sensor-like noise, which reproduces the neighbour correlation that
RS steganalysis relies on. All randomness comes from the package's own
SplitMix64 stream, so the scenes regenerate identically everywhere.

The canonical copies live in ``fixtures_data/*.ppm``; ``load_fixture``
reads those, ``generate_fixture`` re-synthesizes from scratch. Running
``python -m rsguard.fixtures OUTDIR`` writes a fresh set.
"""

from __future__ import annotations

import importlib.resources
from pathlib import Path

import numpy as np

from .codec import SplitMix64
from .raster import RgbImage, load_ppm, save_ppm

SIZE = 256

FIXTURE_NAMES = ("portrait", "dunes", "meadow", "blocks", "vignette")

# "portrait" doubles as the default demo/benchmark scene: a smooth
# portrait-like arrangement of soft blobs over a gentle gradient.
DEFAULT_FIXTURE = "portrait"


def _uniform(rng: SplitMix64, shape) -> np.ndarray:
    n = int(np.prod(shape))
    return (rng.next_array(n).astype(np.float64) / 2**64).reshape(shape)


def _box_blur(f: np.ndarray, radius: int) -> np.ndarray:
    k = 2 * radius + 1
    csum = np.cumsum(np.pad(f, ((radius + 1, radius), (0, 0)), mode="edge"), axis=0)
    f = (csum[k:, :] - csum[:-k, :]) / k
    csum = np.cumsum(np.pad(f, ((0, 0), (radius + 1, radius)), mode="edge"), axis=1)
    return (csum[:, k:] - csum[:, :-k]) / k


def _smooth_field(rng: SplitMix64, shape, passes: int, radius: int) -> np.ndarray:
    """Box-blurred white noise: a cloud-like field normalized to [0, 1]."""
    f = _uniform(rng, shape)
    for _ in range(passes):
        f = _box_blur(f, radius)
    f -= f.min()
    m = f.max()
    return f / m if m > 0 else f


def _finish(rng: SplitMix64, channels, noise_amp: float = 2.0) -> np.ndarray:
    """Stack channels, add +-noise_amp uniform noise, quantize to uint8."""
    img = np.stack(channels, axis=-1)
    noise = (_uniform(rng, img.shape) - 0.5) * 2 * noise_amp
    return np.clip(np.rint(img + noise), 0, 255).astype(np.uint8)


def _scene_portrait() -> np.ndarray:
    rng = SplitMix64(101)
    y, x = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
    blobs = np.zeros((SIZE, SIZE))
    for _ in range(6):
        cx, cy = _uniform(rng, 2) * SIZE
        sig = 30 + _uniform(rng, 1)[0] * 60
        amp = 60 + _uniform(rng, 1)[0] * 120
        blobs += amp * np.exp(-(((x - cx) ** 2 + (y - cy) ** 2) / (2 * sig**2)))
    base = 0.3 * y + blobs
    base = 35 + 185 * (base - base.min()) / (base.max() - base.min())
    return _finish(rng, [base * 1.10, base * 0.92, base * 0.80])


def _scene_dunes() -> np.ndarray:
    rng = SplitMix64(202)
    y, x = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
    warp = _smooth_field(rng, (SIZE, SIZE), passes=3, radius=16) * 40
    ridges = 110 + 70 * np.sin(2 * np.pi * (x + warp) / 48.0) * np.cos(
        2 * np.pi * y / 96.0
    )
    base = 60 + 0.25 * (ridges - ridges.min())
    return _finish(rng, [base + 70, base + 40, base])


def _scene_meadow() -> np.ndarray:
    rng = SplitMix64(303)
    f1 = _smooth_field(rng, (SIZE, SIZE), passes=2, radius=4)
    f2 = _smooth_field(rng, (SIZE, SIZE), passes=3, radius=12)
    return _finish(
        rng,
        [40 + 90 * f2 + 30 * f1, 60 + 120 * f2 + 40 * f1, 30 + 60 * f2 + 20 * f1],
    )


def _scene_blocks() -> np.ndarray:
    rng = SplitMix64(404)
    img = np.full((SIZE, SIZE, 3), 90.0)
    for _ in range(12):
        x0, y0 = (_uniform(rng, 2) * (SIZE - 40)).astype(int)
        w, h = (20 + _uniform(rng, 2) * 80).astype(int)
        col = 40 + _uniform(rng, 3) * 180
        img[y0 : y0 + h, x0 : x0 + w] += col - 90
    soft = [np.clip(_box_blur(img[:, :, c], 2), 0, 255) for c in range(3)]
    return _finish(rng, soft)


def _scene_vignette() -> np.ndarray:
    rng = SplitMix64(505)
    y, x = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
    rad = np.sqrt((x - 128) ** 2 + (y - 128) ** 2) / 181.0
    fall = 1.0 - 0.75 * rad**2
    tex = _smooth_field(rng, (SIZE, SIZE), passes=2, radius=6)
    base = (70 + 130 * tex) * fall
    return _finish(
        rng,
        [np.clip(base * 1.05 + 20, 0, 255), np.clip(base * 0.95 + 10, 0, 255), np.clip(base * 1.15, 0, 255)],
    )


_SCENES = {
    "portrait": _scene_portrait,
    "dunes": _scene_dunes,
    "meadow": _scene_meadow,
    "blocks": _scene_blocks,
    "vignette": _scene_vignette,
}


def generate_fixture(name: str) -> RgbImage:
    """Synthesize a scene from scratch (deterministic)."""
    if name not in _SCENES:
        raise KeyError(f"unknown fixture {name!r}, expected one of {FIXTURE_NAMES}")
    return RgbImage.from_array(_SCENES[name]())


def load_fixture(name: str) -> RgbImage:
    """Load the canonical bundled copy of a scene."""
    if name not in _SCENES:
        raise KeyError(f"unknown fixture {name!r}, expected one of {FIXTURE_NAMES}")
    raw = (
        importlib.resources.files("rsguard")
        .joinpath("fixtures_data")
        .joinpath(f"{name}.ppm")
        .read_bytes()
    )
    return load_ppm(raw)


def write_fixtures(out_dir: str | Path) -> list[Path]:
    """Regenerate every scene into ``out_dir`` as canonical PPM files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name in FIXTURE_NAMES:
        path = out / f"{name}.ppm"
        path.write_bytes(save_ppm(generate_fixture(name)))
        written.append(path)
    return written


if __name__ == "__main__":
    import sys

    target = sys.argv[1] if len(sys.argv) > 1 else "fixtures_out"
    for p in write_fixtures(target):
        print(p)
