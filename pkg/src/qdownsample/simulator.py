"""Minimal dense statevector engine.

Conventions (used everywhere in this package):
  * A basis index j encodes qubit q as bit q of j, i.e. j = sum_q b_q 2^q.
    Qubit n-1 is the most significant.
  * In ``amps.reshape((2,) * n)`` qubit q therefore lives on axis n-1-q.
  * The QFT on an m-qubit subregister acts in that subregister's index space
    as the unitary W[j, k] = exp(+2*pi*i*j*k / 2^m) / 2^(m/2); the inverse
    uses the conjugate kernel.

All operations are pure: they return a new Statevector and never mutate the
input. Distributions are plain 1-D numpy float arrays.
"""

from dataclasses import dataclass

import numpy as np

from .validation import check_basis_index, check_qubit_count, check_qubit_indices

_SQRT2_INV = 1.0 / np.sqrt(2.0)


@dataclass
class Statevector:
    """Dense n-qubit state: ``amps`` has length 2^n, complex dtype."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        self.n = check_qubit_count(self.n)
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (2**self.n,):
            raise ValueError(
                f"amplitude vector has shape {self.amps.shape}, "
                f"expected ({2 ** self.n},) for {self.n} qubits"
            )

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))


@dataclass
class QubitRange:
    """Contiguous inclusive qubit index range [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self):
        self.lo = int(self.lo)
        self.hi = int(self.hi)
        if self.lo < 0 or self.hi < self.lo:
            raise ValueError(f"invalid qubit range [{self.lo}, {self.hi}]")

    @property
    def size(self):
        return self.hi - self.lo + 1

    def check_within(self, n):
        if self.hi >= n:
            raise ValueError(
                f"qubit range [{self.lo}, {self.hi}] exceeds register of {n} qubits"
            )


def basis_state(n, j):
    """|j> on n qubits."""
    n = check_qubit_count(n)
    j = check_basis_index(n, j)
    amps = np.zeros(2**n, dtype=complex)
    amps[j] = 1.0
    return Statevector(n, amps)


def _three_axis(amps, n, q):
    """View with qubit q isolated: shape (2^(n-q-1), 2, 2^q)."""
    return amps.reshape(2 ** (n - q - 1), 2, 2**q)


def _five_axis(amps, n, qa, qb):
    """View isolating qubits qa > qb: shape (hi, 2, mid, 2, lo)."""
    return amps.reshape(
        2 ** (n - qa - 1), 2, 2 ** (qa - qb - 1), 2, 2**qb
    )


def _apply_h_single(amps, n, q):
    x = _three_axis(amps, n, q)
    out = np.empty_like(x)
    out[:, 0, :] = (x[:, 0, :] + x[:, 1, :]) * _SQRT2_INV
    out[:, 1, :] = (x[:, 0, :] - x[:, 1, :]) * _SQRT2_INV
    return out.reshape(-1)


def _apply_cphase(amps, n, qa, qb, phase):
    """Multiply the |1>|1> block of qubits (qa, qb) by ``phase``."""
    hi, lo = max(qa, qb), min(qa, qb)
    x = _five_axis(amps, n, hi, lo).copy()
    x[:, 1, :, 1, :] *= phase
    return x.reshape(-1)


def _apply_swap(amps, n, qa, qb):
    hi, lo = max(qa, qb), min(qa, qb)
    x = _five_axis(amps, n, hi, lo).copy()
    tmp = x[:, 0, :, 1, :].copy()
    x[:, 0, :, 1, :] = x[:, 1, :, 0, :]
    x[:, 1, :, 0, :] = tmp
    return x.reshape(-1)


def apply_hadamard_layer(state, qubits):
    """Apply H independently on each listed qubit."""
    qubits = check_qubit_indices(state.n, qubits)
    amps = state.amps
    for q in qubits:
        amps = _apply_h_single(amps, state.n, q)
    return Statevector(state.n, amps)


def apply_qft(state, qrange, inverse=False):
    """Exact QFT (or inverse) on a contiguous subregister.

    Implemented as the textbook gate ladder: for target t from high to low,
    H on qubit lo+t followed by controlled phases exp(2*pi*i / 2^(t-s+1))
    from each lower qubit lo+s, then a final qubit-order reversal via swaps.
    The inverse conjugates the input, applies the forward ladder, and
    conjugates back (valid because the QFT matrix is symmetric).
    """
    qrange.check_within(state.n)
    if inverse:
        conj = Statevector(state.n, np.conj(state.amps))
        out = apply_qft(conj, qrange, inverse=False)
        return Statevector(state.n, np.conj(out.amps))
    n, m = state.n, qrange.size
    amps = state.amps.astype(complex)
    for t in range(m - 1, -1, -1):
        amps = _apply_h_single(amps, n, qrange.lo + t)
        for s in range(t - 1, -1, -1):
            phase = np.exp(2j * np.pi / 2 ** (t - s + 1))
            amps = _apply_cphase(amps, n, qrange.lo + t, qrange.lo + s, phase)
    for t in range(m // 2):
        amps = _apply_swap(amps, n, qrange.lo + t, qrange.lo + (m - 1 - t))
    return Statevector(n, amps)


def probabilities(state):
    """Born-rule probabilities |amps_j|^2 as a plain float vector."""
    return np.abs(state.amps) ** 2


def marginalize(dist, n, kept):
    """Sum a 2^n-bin distribution onto the listed kept qubits.

    ``kept`` must be distinct and sorted ascending; kept[t] becomes bit t of
    the output index, preserving relative qubit order.
    """
    dist = np.asarray(dist, dtype=float)
    n = check_qubit_count(n)
    if dist.shape != (2**n,):
        raise ValueError(
            f"distribution has length {dist.size}, expected {2 ** n}"
        )
    kept = check_qubit_indices(n, kept)
    if not kept:
        raise ValueError("kept qubit list is empty")
    if kept != sorted(kept):
        raise ValueError(f"kept qubit list must be sorted ascending, got {kept}")
    discarded = [q for q in range(n) if q not in set(kept)]
    if not discarded:
        return dist.copy()
    axes = tuple(n - 1 - q for q in discarded)
    return dist.reshape((2,) * n).sum(axis=axes).reshape(-1)
