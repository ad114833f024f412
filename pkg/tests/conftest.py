"""Shared helpers for the test suite (imported as plain functions)."""

import numpy as np

from qdownsample.pipeline import PixelImage
from qdownsample.simulator import Statevector


def random_state(n, rng):
    """Haar-ish random pure state on n qubits (normalized Gaussian vector)."""
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return Statevector(n, amps / np.sqrt(np.sum(np.abs(amps) ** 2)))


def random_image(side, depth_bits, rng):
    """Random integer image guaranteed not to be all black."""
    pixels = rng.integers(0, 2**depth_bits, size=(side, side))
    if pixels.sum() == 0:
        pixels[0, 0] = 1
    return PixelImage(pixels, depth_bits)


def haar_unitary(dim, rng):
    """Haar-distributed unitary via QR with phase correction."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def apply_on_qubits(state, qubits, unitary):
    """Apply a dense unitary to the listed qubits of a Statevector.

    ``qubits`` are ascending; qubit ``qubits[t]`` is bit t of the unitary's
    index space (the same labeling marginalize and trace_out use).
    """
    n = len(qubits)
    dim = 2**n
    if unitary.shape != (dim, dim):
        raise ValueError("unitary does not match the qubit count")
    tensor = state.amps.reshape((2,) * state.n)
    # most significant unitary bit first, matching flattened index order
    src = [state.n - 1 - q for q in reversed(qubits)]
    moved = np.moveaxis(tensor, src, range(n))
    block = moved.reshape(dim, -1)
    block = unitary @ block
    moved = block.reshape(moved.shape)
    tensor = np.moveaxis(moved, range(n), src)
    return Statevector(state.n, tensor.reshape(-1))
