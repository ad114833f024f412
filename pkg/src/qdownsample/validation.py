"""Shared input-validation helpers.

All validators raise plain ValueError (or the DegenerateInputError subclass
for numerically degenerate inputs, so callers can distinguish bad arguments
from inputs that are well-formed but carry no usable signal).
"""

import numpy as np


class DegenerateInputError(ValueError):
    """Well-formed input with no usable numeric content.

    Examples: a state with zero weight on the kept subspace after projection,
    or a sensor reading that is identically zero. Kept as a ValueError
    subclass so generic validation handling still catches it; the CLI maps it
    to its own exit code.
    """


def check_qubit_count(n):
    n = int(n)
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    return n


def check_basis_index(n, j):
    j = int(j)
    if not 0 <= j < 2**n:
        raise ValueError(f"basis index {j} out of range for {n} qubits")
    return j


def check_qubit_indices(n, qubits):
    """Distinct qubit indices, each in [0, n)."""
    qubits = [int(q) for q in qubits]
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubit index in {qubits}")
    for q in qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for {n} qubits")
    return qubits


def check_state_vector(amps, tol=1e-9):
    """Complex amplitude vector of length 2^n, normalized within tol."""
    amps = np.asarray(amps, dtype=complex)
    if amps.ndim != 1:
        raise ValueError(f"state vector must be 1-D, got shape {amps.shape}")
    n = int(np.log2(amps.size))
    if 2**n != amps.size:
        raise ValueError(f"state vector length {amps.size} is not a power of two")
    norm = np.sum(np.abs(amps) ** 2)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state vector norm^2 = {norm!r}, not 1 within {tol}")
    return amps


def check_distribution(dist, tol=1e-9):
    """Nonnegative vector summing to 1 within tol."""
    dist = np.asarray(dist, dtype=float)
    if dist.ndim != 1:
        raise ValueError(f"distribution must be 1-D, got shape {dist.shape}")
    if np.any(dist < -tol):
        raise ValueError("distribution has negative entries")
    total = dist.sum()
    if abs(total - 1.0) > tol:
        raise ValueError(f"distribution sums to {total!r}, not 1 within {tol}")
    return dist


def check_square_image(values):
    """Square 2-D array with power-of-two side >= 2; returns float array."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError(f"image must be square 2-D, got shape {values.shape}")
    side = values.shape[0]
    if side < 2 or side & (side - 1):
        raise ValueError(f"image side must be a power of two >= 2, got {side}")
    if np.any(values < 0):
        raise ValueError("image has negative pixel values")
    return values


def check_pixel_range(pixels, depth_bits):
    """Integer grey values within [0, 2^depth_bits - 1]."""
    depth_bits = int(depth_bits)
    if depth_bits < 1:
        raise ValueError(f"bit depth must be >= 1, got {depth_bits}")
    pixels = np.asarray(pixels)
    if not np.issubdtype(pixels.dtype, np.integer):
        rounded = np.rint(pixels)
        if not np.array_equal(rounded, pixels):
            raise ValueError("pixel values must be integers")
        pixels = rounded.astype(np.int64)
    top = 2**depth_bits - 1
    if pixels.min() < 0 or pixels.max() > top:
        raise ValueError(
            f"pixel values must lie in [0, {top}] for depth {depth_bits} bits"
        )
    return pixels.astype(np.int64)
