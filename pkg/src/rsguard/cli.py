"""Command-line front end: embed / extract / analyze / harden / metrics.

Every command prints a single JSON report to stdout (keys sorted, no
timestamps) and is fully deterministic given its flags; images and
recovered messages go to files. Exit codes are stable:

  0  success
  2  message does not fit the cover
  3  I/O error or unparseable image
  4  corrupt frame header (wrong key or no message)
  5  analyze: at least one channel flagged
  6  bad mask specification
  7  harden: message no longer extracts (internal verification failed)
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from .codec import derive_seed, frame_message, permute_positions
from .embedder import capacity_bits, embed, extract
from .errors import BadMask, CapacityExceeded, CorruptHeader, MessageLost, RsGuardError
from .ga_optimizer import GaConfig, harden
from .metrics import quality
from .raster import RgbImage, load_ppm, save_ppm
from .rs_analysis import DEFAULT_GROUP_LEN, DEFAULT_THRESHOLD, detect, rs_gap, rs_statistics

EXIT_OK = 0
EXIT_CAPACITY = 2
EXIT_IO = 3
EXIT_CORRUPT = 4
EXIT_FLAGGED = 5
EXIT_BAD_MASK = 6
EXIT_MESSAGE_LOST = 7

_MASK_TOKEN = re.compile(r"^[+-]?[01]$")


def parse_mask(spec: str) -> tuple[int, ...]:
    """Parse a strict comma-separated signed-digit mask like ``0,+1,+1,0``."""
    entries = []
    for token in spec.split(","):
        token = token.strip()
        if not _MASK_TOKEN.match(token):
            raise BadMask(f"bad mask entry {token!r}")
        entries.append(int(token))
    if not entries:
        raise BadMask("empty mask")
    return tuple(entries)


def _print_report(command: str, inputs: dict, results: dict, seed: int) -> None:
    report = {"command": command, "inputs": inputs, "results": results, "seed": seed}
    print(json.dumps(report, sort_keys=True))


def _read_image(path: str) -> RgbImage:
    return load_ppm(Path(path).read_bytes())


def _stats_json(stats, threshold: float) -> dict:
    gaps = rs_gap(stats)
    flags = detect(stats, threshold)
    out = {}
    for ch, cs in stats.items():
        out[ch.name.lower()] = {
            "r_pos": cs.r_pos,
            "s_pos": cs.s_pos,
            "u_pos": cs.u_pos,
            "r_neg": cs.r_neg,
            "s_neg": cs.s_neg,
            "u_neg": cs.u_neg,
            "gap_r": gaps[ch][0],
            "gap_s": gaps[ch][1],
            "flagged": flags[ch],
        }
    return out


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_embed(args) -> int:
    try:
        cover = _read_image(args.cover)
        if args.text is not None:
            message = args.text.encode("utf-8")
        else:
            message = Path(args.message).read_bytes()
    except (OSError, RsGuardError) as e:
        return _fail(EXIT_IO, str(e))
    try:
        result = embed(cover, message, args.key)
    except CapacityExceeded as e:
        return _fail(EXIT_CAPACITY, str(e))
    try:
        Path(args.out).write_bytes(save_ppm(result.stego))
    except OSError as e:
        return _fail(EXIT_IO, str(e))
    changed = int(np.count_nonzero(cover.flat() != result.stego.flat()))
    _print_report(
        "embed",
        {"cover": args.cover, "out": args.out},
        {
            "capacity_bits": capacity_bits(cover),
            "changed_bytes": changed,
            "frame_bits": int(result.plan.size),
            "message_bytes": len(message),
        },
        derive_seed(args.key),
    )
    return EXIT_OK


def cmd_extract(args) -> int:
    try:
        stego = _read_image(args.stego)
    except (OSError, RsGuardError) as e:
        return _fail(EXIT_IO, str(e))
    try:
        message = extract(stego, args.key)
    except CorruptHeader as e:
        return _fail(EXIT_CORRUPT, str(e))
    try:
        Path(args.out).write_bytes(message)
    except OSError as e:
        return _fail(EXIT_IO, str(e))
    _print_report(
        "extract",
        {"out": args.out, "stego": args.stego},
        {"message_bytes": len(message)},
        derive_seed(args.key),
    )
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        mask = parse_mask(args.mask)
        image = _read_image(args.image)
    except BadMask as e:
        return _fail(EXIT_BAD_MASK, str(e))
    except (OSError, RsGuardError) as e:
        return _fail(EXIT_IO, str(e))
    try:
        stats = rs_statistics(image, mask, args.group_len)
    except BadMask as e:
        return _fail(EXIT_BAD_MASK, str(e))
    results = _stats_json(stats, args.threshold)
    _print_report(
        "analyze",
        {
            "group_len": args.group_len,
            "image": args.image,
            "mask": ",".join(f"{m:+d}" if m else "0" for m in mask),
            "threshold": args.threshold,
        },
        results,
        0,
    )
    flagged = any(results[c]["flagged"] for c in ("red", "green", "blue"))
    return EXIT_FLAGGED if flagged else EXIT_OK


def cmd_harden(args) -> int:
    try:
        mask = parse_mask(args.mask)
        if len(mask) != args.group_len:
            raise BadMask(f"mask of {len(mask)} entries, group_len {args.group_len}")
    except BadMask as e:
        return _fail(EXIT_BAD_MASK, str(e))
    try:
        cover = _read_image(args.cover)
        stego = _read_image(args.stego)
    except (OSError, RsGuardError) as e:
        return _fail(EXIT_IO, str(e))
    try:
        config = GaConfig(
            population_size=args.population,
            generations=args.generations,
            crossover_rate=args.crossover_rate,
            mutation_rate=args.mutation_rate,
            alpha=args.alpha,
            beta=args.beta,
            seed=args.seed,
            mask=mask,
            group_len=args.group_len,
        )
    except ValueError as e:
        return _fail(EXIT_IO, str(e))
    try:
        message = extract(stego, args.key)
    except CorruptHeader as e:
        return _fail(EXIT_CORRUPT, f"stego image has no readable frame: {e}")

    pre_stats = _stats_json(rs_statistics(stego, mask, args.group_len), args.threshold)
    pre_quality = quality(cover, stego).to_json_dict()

    plan = permute_positions(
        stego.n_bytes, frame_message(message).size, derive_seed(args.key)
    )
    try:
        hardened = harden(stego, cover, plan, config)
    except RsGuardError as e:
        return _fail(EXIT_IO, str(e))

    try:
        recovered = extract(hardened, args.key)
    except CorruptHeader:
        recovered = None
    if recovered != message:
        return _fail(EXIT_MESSAGE_LOST, "hardened image no longer yields the message")

    try:
        Path(args.out).write_bytes(save_ppm(hardened))
    except OSError as e:
        return _fail(EXIT_IO, str(e))

    post_stats = _stats_json(rs_statistics(hardened, mask, args.group_len), args.threshold)
    post_quality = quality(cover, hardened).to_json_dict()
    _print_report(
        "harden",
        {
            "alpha": args.alpha,
            "beta": args.beta,
            "cover": args.cover,
            "crossover_rate": args.crossover_rate,
            "generations": args.generations,
            "group_len": args.group_len,
            "mask": ",".join(f"{m:+d}" if m else "0" for m in mask),
            "mutation_rate": args.mutation_rate,
            "out": args.out,
            "population": args.population,
            "stego": args.stego,
            "threshold": args.threshold,
        },
        {
            "extracted_ok": True,
            "pre": {"rs": pre_stats, "quality": pre_quality},
            "post": {"rs": post_stats, "quality": post_quality},
        },
        args.seed,
    )
    return EXIT_OK


def cmd_metrics(args) -> int:
    try:
        cover = _read_image(args.cover)
        stego = _read_image(args.stego)
        report = quality(cover, stego)
    except (OSError, RsGuardError) as e:
        return _fail(EXIT_IO, str(e))
    _print_report(
        "metrics",
        {"cover": args.cover, "stego": args.stego},
        report.to_json_dict(),
        0,
    )
    return EXIT_OK


def _add_rs_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mask", default="0,+1,+1,0", help="flipping mask, e.g. 0,+1,+1,0")
    p.add_argument("--group-len", dest="group_len", type=int, default=DEFAULT_GROUP_LEN)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                   help="gap (percentage points) at which a channel is flagged")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsguard",
        description="LSB steganography with RS steganalysis and GA hardening",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="hide a message in a cover image")
    p.add_argument("--cover", required=True, help="cover image (binary PPM)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--message", help="file whose bytes are embedded")
    src.add_argument("--text", help="literal text to embed")
    p.add_argument("--key", required=True, help="stego key (text)")
    p.add_argument("--out", required=True, help="output stego PPM")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover a message from a stego image")
    p.add_argument("--stego", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--out", required=True, help="file for the recovered bytes")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("analyze", help="RS steganalysis of an image")
    p.add_argument("--image", required=True)
    _add_rs_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("harden", help="GA pass lowering the RS gaps of a stego image")
    p.add_argument("--cover", required=True)
    p.add_argument("--stego", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--population", type=int, default=GaConfig.population_size)
    p.add_argument("--generations", type=int, default=GaConfig.generations)
    p.add_argument("--alpha", type=float, default=GaConfig.alpha)
    p.add_argument("--beta", type=float, default=GaConfig.beta)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutation-rate", dest="mutation_rate", type=float,
                   default=GaConfig.mutation_rate)
    p.add_argument("--crossover-rate", dest="crossover_rate", type=float,
                   default=GaConfig.crossover_rate)
    _add_rs_flags(p)
    p.set_defaults(func=cmd_harden)

    p = sub.add_parser("metrics", help="quality metrics between two images")
    p.add_argument("--cover", required=True)
    p.add_argument("--stego", required=True)
    p.set_defaults(func=cmd_metrics)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
