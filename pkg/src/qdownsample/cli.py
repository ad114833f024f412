"""Command-line front end.

Thin shell over the library: every number it writes comes from a library
call, and every randomized command is reproducible from (flags, seed).

Exit codes: 0 success; 2 validation error (bad arguments or malformed
image); 3 I/O error; 4 degenerate numeric input.

Commands:
  compress       exact downsampled distribution -> PGM (+ optional JSON)
  reconstruct    shot-sampled grey reconstruction -> PGM (+ stats JSON)
  fluctuations   repeated reconstructions -> std map PGM (+ histogram JSON)
  advantage      gate-count model report -> stdout/JSON (+ CSV sweep)
  sense          lattice-sensor reading -> PGM (+ JSON)
"""

import argparse
import json
import sys

import numpy as np

from . import advantage as adv
from .pgm import depth_bits_for_maxval, read_pgm, write_pgm
from .pipeline import (
    PixelImage,
    devectorize,
    downsample,
    downsample_tiled,
    encode_image,
)
from .reconstruct import (
    fluctuation_study,
    grey_levels,
    sample_shots,
    stats_payload,
)
from .sensor import load_sensor_config, make_grid, sense
from .validation import DegenerateInputError


def _load_image(path):
    pixels, maxval = read_pgm(path)
    if pixels.shape[0] != pixels.shape[1]:
        raise ValueError(
            f"input image must be square, got {pixels.shape[1]} x {pixels.shape[0]}"
        )
    return PixelImage(pixels, depth_bits_for_maxval(maxval))


def _dist_to_grey(dist, levels):
    """Exact-distribution rendering: grey = round(p * (L-1) / p_max)."""
    dist = np.asarray(dist, dtype=float)
    peak = dist.max()
    if peak <= 0:
        raise DegenerateInputError("distribution has no weight to render")
    return np.rint(dist * (levels - 1) / peak).astype(np.int64)


def _shots_for(args, levels, side):
    if args.shots is not None:
        return int(args.shots)
    if args.preset == "conservative":
        return 4 * levels**2 * side**2
    return int(np.ceil(side**2 * float(levels) ** 1.5))  # adequate


def cmd_compress(args):
    image = _load_image(args.input)
    if args.tile_b is not None:
        grid = downsample_tiled(image, args.tile_b, args.nt, args.hadamard)
        dist = grid.reshape(-1)
        side = grid.shape[0]
    else:
        comp = downsample(encode_image(image), args.nt, args.hadamard)
        dist, side = comp.dist, comp.side
    maxval = image.levels - 1
    grey = _dist_to_grey(dist, image.levels)
    write_pgm(args.output, grey.reshape(side, side), maxval)
    if args.json:
        payload = {
            "side": side,
            "nt": args.nt,
            "hadamard": bool(args.hadamard),
            "dist": dist.tolist(),
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    print(f"wrote {args.output} ({side} x {side})")
    return 0


def cmd_reconstruct(args):
    image = _load_image(args.input)
    comp = downsample(encode_image(image), args.nt, args.hadamard)
    levels = image.levels
    shots = _shots_for(args, levels, comp.side)
    hist = sample_shots(comp.dist, shots, seed=args.seed)
    recon = grey_levels(hist, levels)
    maxval = levels - 1
    # the white sentinel L is one past the top representable level
    clamped = np.minimum(recon.levels, maxval)
    write_pgm(args.output, clamped.reshape(comp.side, comp.side), maxval)
    if args.json:
        payload = stats_payload(
            shots=shots,
            f_w=recon.white_freq,
            grey=recon.levels,
            ci=recon.ci_halfwidths,
        )
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    print(f"wrote {args.output} ({comp.side} x {comp.side}, {shots} shots)")
    return 0


def cmd_fluctuations(args):
    image = _load_image(args.input)
    comp = downsample(encode_image(image), args.nt, args.hadamard)
    levels = image.levels
    shots = _shots_for(args, levels, comp.side)
    study = fluctuation_study(
        comp.dist, shots, args.repeats, levels, seed=args.seed
    )
    maxval = levels - 1
    peak = study.stds.max()
    if peak > 0:
        grey = np.rint(study.stds * maxval / peak).astype(np.int64)
    else:
        grey = np.zeros_like(study.stds, dtype=np.int64)
    write_pgm(args.output, grey.reshape(comp.side, comp.side), maxval)
    if args.json:
        payload = stats_payload(
            shots=shots,
            std_map=study.stds,
            histogram=(study.hist_counts, study.hist_edges),
        )
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    print(
        f"wrote {args.output} (median std "
        f"{float(np.median(study.stds)):.3f} grey levels)"
    )
    return 0


def cmd_advantage(args):
    if args.nt is not None:
        report = adv.cost_report(args.n0, args.nt, args.depth)
        text = adv.report_to_json(report)
        if args.json:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
        print(text)
    else:
        region = adv.advantage_region(args.n0, args.depth)
        payload = {
            "n0": args.n0,
            "depth": args.depth,
            "lhs": adv.theorem_lhs(args.n0, args.depth),
            "region": region,
        }
        if args.json:
            with open(args.json, "w") as fh:
                json.dump(payload, fh, indent=2)
        print(json.dumps(payload, indent=2))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            adv.sweep_to_csv(fh, args.n0, args.depth)
        print(f"wrote {args.csv}")
    return 0


def cmd_sense(args):
    field, grid, quad = load_sensor_config(args.config)
    if args.side is not None:
        grid = make_grid(
            args.side,
            extent=(grid.centers[:, 0].min(), grid.centers[:, 0].max()),
            width=grid.width,
            support_radius=grid.support_radius,
            flip_y=grid.flip_y,
        )
    reading = sense(field, grid, **quad)
    maxval = 255
    grey = np.rint(reading.probs * maxval / reading.probs.max()).astype(np.int64)
    write_pgm(args.output, grey, maxval)
    if args.json:
        payload = {
            "side": grid.side,
            "probs": reading.probs.tolist(),
            "v_real": np.real(reading.v).tolist(),
            "v_imag": np.imag(reading.v).tolist(),
            "convergence_delta": reading.convergence_delta,
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    print(f"wrote {args.output} ({grid.side} x {grid.side})")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qdownsample",
        description="QFT-based image downsampling toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, output_required=True):
        p.add_argument("--input", required=True, help="input PGM (P5)")
        p.add_argument("--output", required=output_required, help="output PGM")

    def add_pipeline(p):
        p.add_argument("--nt", type=int, default=1,
                       help="downsampling factor (qubit pairs discarded)")
        p.add_argument("--hadamard", action="store_true",
                       help="apply the paired Hadamard layers")

    def add_shots(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--shots", type=int, default=None,
                       help="explicit shot count")
        g.add_argument("--preset", choices=["conservative", "adequate"],
                       default="conservative",
                       help="shot budget: conservative = 4*L^2*d^2, "
                            "adequate = d^2*L^(3/2)")

    p = sub.add_parser("compress", help="exact downsampled distribution")
    add_io(p)
    add_pipeline(p)
    p.add_argument("--tile-b", type=int, default=None,
                   help="split into blocks of at most this register size")
    p.add_argument("--json", help="also dump the distribution as JSON")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("reconstruct", help="shot-sampled grey reconstruction")
    add_io(p)
    add_pipeline(p)
    add_shots(p)
    p.add_argument("--seed", type=int, default=None, help="RNG seed")
    p.add_argument("--json", help="stats JSON output path")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("fluctuations", help="per-pixel std map over repeats")
    add_io(p)
    add_pipeline(p)
    add_shots(p)
    p.add_argument("--repeats", type=int, default=20)
    p.add_argument("--seed", type=int, default=None, help="RNG seed")
    p.add_argument("--json", help="stats JSON output path")
    p.set_defaults(func=cmd_fluctuations)

    p = sub.add_parser("advantage", help="gate-count model report")
    p.add_argument("--n0", type=int, required=True, help="register size")
    p.add_argument("--depth", type=int, default=8, help="bit depth c")
    p.add_argument("--nt", type=int, default=None,
                   help="evaluate one factor (default: scan the region)")
    p.add_argument("--json", help="report JSON output path")
    p.add_argument("--csv", help="per-nt sweep CSV output path")
    p.set_defaults(func=cmd_advantage)

    p = sub.add_parser("sense", help="lattice-sensor simulation")
    p.add_argument("--config", required=True, help="sensor INI config")
    p.add_argument("--output", required=True, help="output PGM of |v|^2")
    p.add_argument("--side", type=int, default=None,
                   help="override the lattice side from the config")
    p.add_argument("--json", help="reading JSON output path")
    p.set_defaults(func=cmd_sense)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
