"""Full-scale downsampling run: phantom image -> 2x-reduced reconstruction.

The desk-scale test suite stops at 32x32 inputs; this script exists for the
long-running 512x512 reproduction (2^18 amplitudes, 2^26+ shots).  Expect a
few minutes at the default size.  Smaller --side values give quick smokes.

Usage:
    python scripts/full_scale.py [--side 512] [--nt 1] [--hadamard]
                                 [--shots N] [--seed 0] [--outdir runs/full]

Outputs (in --outdir): input.pgm, compressed.pgm (exact distribution,
rescaled), reconstructed.pgm (shot-based grey levels), stats.json.
"""

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from qdownsample.pgm import write_pgm
from qdownsample.pipeline import downsample, encode_image
from qdownsample.reconstruct import (
    grey_levels,
    sample_shots,
    stats_payload,
)
from qdownsample.sample_images import phantom


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--side", type=int, default=512,
                        help="input side length, power of two (default 512)")
    parser.add_argument("--nt", type=int, default=1,
                        help="qubits to discard per register half")
    parser.add_argument("--hadamard", action="store_true",
                        help="wrap the transform in Hadamard layers")
    parser.add_argument("--shots", type=int, default=None,
                        help="shot budget (default: adequate preset "
                             "d^2 * L^1.5 for the output side d)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--outdir", type=Path, default=Path("runs/full"))
    return parser.parse_args(argv)


def step(label, start):
    print(f"{label:<28s} {time.perf_counter() - start:8.2f} s", flush=True)
    return time.perf_counter()


def main(argv=None):
    args = parse_args(argv)
    levels = 256       # grey scale L; PGM maxval is L - 1
    maxval = levels - 1
    args.outdir.mkdir(parents=True, exist_ok=True)

    t = time.perf_counter()
    img = phantom(args.side)
    write_pgm(args.outdir / "input.pgm", img.pixels, maxval)
    t = step(f"phantom {args.side}x{args.side}", t)

    qi = encode_image(img)
    t = step(f"encode ({qi.state.n} qubits)", t)

    compressed = downsample(qi, args.nt, hadamard=args.hadamard)
    dist = compressed.dist
    side_out = compressed.side
    t = step(f"downsample -> {side_out}x{side_out}", t)

    peak = dist.max()
    render = np.rint(dist * maxval / peak).astype(np.int64)
    write_pgm(args.outdir / "compressed.pgm", render.reshape(side_out, -1),
              maxval)
    t = step("exact render", t)

    shots = args.shots
    if shots is None:
        shots = int(np.ceil(side_out**2 * float(levels) ** 1.5))
    hist = sample_shots(dist, shots, seed=args.seed)
    t = step(f"sample {shots} shots", t)

    recon = grey_levels(hist, levels)
    pixels = np.minimum(recon.levels, maxval).reshape(side_out, -1)
    write_pgm(args.outdir / "reconstructed.pgm", pixels, maxval)
    payload = stats_payload(shots=shots, f_w=recon.white_freq,
                            grey=recon.levels, ci=recon.ci_halfwidths)
    (args.outdir / "stats.json").write_text(json.dumps(payload, indent=2))
    step("reconstruct + write", t)

    print(f"done: {args.outdir}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
