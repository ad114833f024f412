"""Binary PGM (P5) reader/writer.

Canonical image format for the CLI: single-channel NetPBM, binary raster,
maxval up to 65535 (one byte per sample below 256, two big-endian bytes
otherwise), '#' comments allowed anywhere in the header.
"""

import numpy as np


def read_pgm(path):
    """Read a binary PGM; returns (pixels int64 array, maxval)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] != b"P5":
        raise ValueError(f"{path!r} is not a binary PGM (missing P5 magic)")
    pos = 2
    fields = []
    while len(fields) < 3:
        if pos >= len(data):
            raise ValueError(f"truncated PGM header in {path!r}")
        ch = data[pos : pos + 1]
        if ch == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif ch.isspace():
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < len(data) and data[pos : pos + 1].isdigit():
                pos += 1
            fields.append(int(data[start:pos]))
        else:
            raise ValueError(f"unexpected byte {ch!r} in PGM header of {path!r}")
    # exactly one whitespace byte separates the header from the raster
    if not data[pos : pos + 1].isspace():
        raise ValueError(f"malformed PGM header in {path!r}")
    pos += 1
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ValueError(f"bad PGM dimensions {width} x {height}")
    if not 0 < maxval < 65536:
        raise ValueError(f"bad PGM maxval {maxval}")
    dtype = np.dtype(">u2") if maxval > 255 else np.uint8
    count = width * height
    raster = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
    if raster.size < count:
        raise ValueError(f"truncated PGM raster in {path!r}")
    pixels = raster.astype(np.int64).reshape(height, width)
    if pixels.max(initial=0) > maxval:
        raise ValueError(f"PGM sample exceeds declared maxval in {path!r}")
    return pixels, maxval


def write_pgm(path, pixels, maxval):
    """Write a binary PGM; samples must already lie in [0, maxval]."""
    pixels = np.asarray(pixels)
    maxval = int(maxval)
    if pixels.ndim != 2:
        raise ValueError(f"raster must be 2-D, got shape {pixels.shape}")
    if not 0 < maxval < 65536:
        raise ValueError(f"bad PGM maxval {maxval}")
    rounded = np.rint(pixels).astype(np.int64)
    if rounded.min(initial=0) < 0 or rounded.max(initial=0) > maxval:
        raise ValueError(f"samples out of range [0, {maxval}]")
    height, width = rounded.shape
    dtype = np.dtype(">u2") if maxval > 255 else np.uint8
    header = f"P5\n{width} {height}\n{maxval}\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(rounded.astype(dtype).tobytes())


def depth_bits_for_maxval(maxval):
    """Smallest bit depth whose level count covers the maxval."""
    maxval = int(maxval)
    if maxval < 1:
        raise ValueError(f"bad maxval {maxval}")
    return max(1, (maxval).bit_length())
