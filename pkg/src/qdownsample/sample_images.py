"""Deterministic test images used by tests, docs, and the demo script."""

import numpy as np

from .pipeline import PixelImage


def triangle():
    """4x4 binary lower-triangle pattern (the worked-example input)."""
    pixels = np.array(
        [
            [1, 0, 0, 0],
            [1, 1, 0, 0],
            [1, 1, 1, 0],
            [1, 1, 1, 1],
        ]
    )
    return PixelImage(pixels, depth_bits=1)


def ramp(side=16):
    """Row-major brightness ramp 0 .. side^2 - 1."""
    side = int(side)
    pixels = np.arange(side * side).reshape(side, side)
    depth = max(1, int(side * side - 1).bit_length())
    return PixelImage(pixels, depth_bits=depth)


def phantom(side=32):
    """Ellipse-stack head phantom at 8-bit depth, any power-of-two side.

    A bright outer shell with darker interior structures on a black
    background; structured enough to have a well-defined white reference and
    plenty of mid-grey pixels.
    """
    side = int(side)
    yy, xx = np.mgrid[0:side, 0:side]
    x = (xx - (side - 1) / 2) / (side / 2)
    y = (yy - (side - 1) / 2) / (side / 2)
    img = np.zeros((side, side))

    def ellipse(cx, cy, rx, ry):
        return ((x - cx) / rx) ** 2 + ((y - cy) / ry) ** 2 <= 1.0

    img[ellipse(0.0, 0.0, 0.92, 0.69)] = 204
    img[ellipse(0.0, 0.0, 0.874, 0.6624)] = 77
    img[ellipse(-0.22, 0.0, 0.31, 0.11)] = 153
    img[ellipse(0.22, 0.0, 0.27, 0.16)] = 140
    img[ellipse(0.0, -0.35, 0.21, 0.25)] = 191
    return PixelImage(img.astype(np.int64), depth_bits=8)


def midgrey(side=32):
    """Gentle sinusoidal modulation around mid grey, 8-bit depth."""
    side = int(side)
    yy, xx = np.mgrid[0:side, 0:side]
    img = 128 + 48 * np.sin(2 * np.pi * xx / side) * np.cos(2 * np.pi * yy / side)
    return PixelImage(np.rint(img).astype(np.int64), depth_bits=8)
