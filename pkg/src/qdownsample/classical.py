"""Classical counterpart of the pipeline: radix-2 FFT and Walsh-Hadamard.

The downsampling pipeline is a linear map on the length-N^2 amplitude
vector, so the whole thing can be run with classical transforms:

  * register QFT  = conj(FFT(conj(x))) / sqrt(M)   (inverse-kernel DFT),
  * register IQFT = FFT(x) / sqrt(M)               (forward-kernel DFT),
  * Hadamard layer = fast Walsh-Hadamard transform,
  * discard = reshape + sum of probabilities.

The FFT here is a self-contained iterative radix-2 implementation (batched
over leading axes) rather than numpy.fft, so agreement with the statevector
path is a genuine cross-check of two independent codes. It also carries the
gate-count cost model's classical baseline semantics: the same output via
O(M log M) classical operations.
"""

import numpy as np

from .pipeline import CompressedImage, plan_discards, vectorize


def bit_reverse_indices(m):
    """Permutation reversing m-bit indices (iteratively doubled)."""
    idx = np.zeros(1, dtype=np.int64)
    for _ in range(m):
        idx = np.concatenate([2 * idx, 2 * idx + 1])
    # idx now maps bit-reversed position -> natural index
    return idx


def fft_radix2(x, inverse=False):
    """Iterative radix-2 DFT along the last axis (length a power of two).

    Forward kernel exp(-2*pi*i*j*k/M), unnormalized, matching the usual
    engineering convention; ``inverse=True`` flips the kernel sign but does
    not divide by M.
    """
    x = np.asarray(x, dtype=complex)
    M = x.shape[-1]
    m = int(np.log2(M))
    if 2**m != M:
        raise ValueError(f"transform length {M} is not a power of two")
    out = x[..., bit_reverse_indices(m)].copy()
    sign = 1.0 if inverse else -1.0
    size = 2
    while size <= M:
        half = size // 2
        twiddle = np.exp(sign * 2j * np.pi * np.arange(half) / size)
        y = out.reshape(*out.shape[:-1], M // size, size)
        even = y[..., :half].copy()
        odd = y[..., half:] * twiddle
        y[..., :half] = even + odd
        y[..., half:] = even - odd
        size *= 2
    return out


def fwht(x):
    """Normalized fast Walsh-Hadamard transform along the last axis.

    Equals H^(x)m acting on the index bits; self-inverse.
    """
    x = np.asarray(x, dtype=complex)
    M = x.shape[-1]
    m = int(np.log2(M))
    if 2**m != M:
        raise ValueError(f"transform length {M} is not a power of two")
    out = x.copy()
    half = 1
    while half < M:
        y = out.reshape(*out.shape[:-1], M // (2 * half), 2, half)
        a = y[..., 0, :].copy()
        b = y[..., 1, :].copy()
        y[..., 0, :] = a + b
        y[..., 1, :] = a - b
        half *= 2
    return out / np.sqrt(M)


def classical_pipeline(image, nt, hadamard=False):
    """FFT-based replica of the downsampling pipeline; d x d probability grid.

    Index layout of the length-2^n0 vector, from the most significant bit:
    [rule-1 bits | high kept bits | rule-2 bits | low kept bits]. The partial
    inverse QFT on the low n1 bits is a batched FFT of the rows of the
    (2^nt, 2^n1) reshape; the kept-qubit Hadamard layer acts on axes 1 and 3
    of the (2^nt, 2^kh, 2^nt, 2^kl) reshape; rule-1/rule-2 discards sum
    probabilities over axes 0 and 2 of the same reshape.
    """
    values = vectorize(image)
    total = values.sum()
    if total <= 0:
        raise ValueError("cannot encode an all-black image (zero brightness)")
    amps = np.sqrt(values / total).astype(complex)
    M = amps.size
    n0 = int(np.log2(M))
    layout = plan_discards(n0, nt)
    nt = layout.nt
    if hadamard:
        amps = fwht(amps)
    amps = np.conj(fft_radix2(np.conj(amps))) / np.sqrt(M)
    n1 = n0 - nt
    if nt > 0:
        rows = amps.reshape(2**nt, 2**n1)
        amps = (fft_radix2(rows) / np.sqrt(2**n1)).reshape(-1)
    else:
        amps = fft_radix2(amps) / np.sqrt(M)
    half_kept = n0 // 2 - nt  # kept bits per half of the register
    shape = (2**nt, 2**half_kept, 2**nt, 2**half_kept)
    if hadamard:
        blocks = fwht(amps.reshape(shape))  # low kept bits (last axis)
        blocks = np.moveaxis(fwht(np.moveaxis(blocks, 1, -1)), -1, 1)
        amps = blocks.reshape(-1)
    probs = (np.abs(amps) ** 2).reshape(shape)
    dist = probs.sum(axis=(0, 2)).reshape(-1)
    d = int(np.sqrt(dist.size))
    return CompressedImage(dist, d).grid()
