"""Density-matrix brute-force oracle for cross-checking the pure-state path.

Everything here is deliberately independent of simulator.py's gate ladder:
transforms are dense matrices built from first principles (literal DFT
matrix, Kronecker-product Hadamard layers) and discards are explicit partial
traces taken in the middle of the pipeline, in the textbook order. Sizes are
capped at 10 qubits. Intended for tests; not part of the fast path.
"""

from dataclasses import dataclass

import numpy as np

from .pipeline import encode_image, plan_discards


@dataclass
class DensityMatrix:
    """n-qubit density operator as a dense 2^n x 2^n complex matrix."""

    n: int
    mat: np.ndarray

    def __post_init__(self):
        self.n = int(self.n)
        self.mat = np.asarray(self.mat, dtype=complex)
        if self.mat.shape != (2**self.n, 2**self.n):
            raise ValueError(
                f"matrix shape {self.mat.shape} does not match {self.n} qubits"
            )

    def diagonal(self):
        return np.real(np.diag(self.mat)).copy()


def from_statevector(state):
    """Pure-state density matrix |psi><psi|."""
    return DensityMatrix(state.n, np.outer(state.amps, np.conj(state.amps)))


def validate_density(dm, herm_tol=1e-10, trace_tol=1e-10, psd_tol=-1e-8):
    """Hermiticity / unit trace / positive semidefiniteness checks."""
    if np.max(np.abs(dm.mat - dm.mat.conj().T)) > herm_tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(dm.mat).real - 1.0) > trace_tol:
        raise ValueError("density matrix trace is not 1")
    if np.min(np.linalg.eigvalsh(dm.mat)) < psd_tol:
        raise ValueError("density matrix has a significantly negative eigenvalue")
    return dm


def dft_matrix(m):
    """Literal DFT unitary on m qubits: W[j,k] = exp(2*pi*i*j*k/M)/sqrt(M)."""
    M = 2**m
    j = np.arange(M)
    return np.exp(2j * np.pi * np.outer(j, j) / M) / np.sqrt(M)


def hadamard_matrix(m):
    """H^(x)m by repeated Kronecker products."""
    h1 = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    out = np.array([[1.0]])
    for _ in range(m):
        out = np.kron(out, h1)
    return out


def apply_unitary(dm, unitary):
    u = np.asarray(unitary, dtype=complex)
    return DensityMatrix(dm.n, u @ dm.mat @ u.conj().T)


def trace_out(dm, qubits):
    """Partial trace over the listed qubits (any subset, order-free).

    The surviving qubits keep their relative order; the result acts on a
    register relabeled 0..n_keep-1 accordingly.
    """
    qubits = sorted(set(int(q) for q in qubits))
    n = dm.n
    for q in qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for {n} qubits")
    if len(qubits) == n:
        raise ValueError("cannot trace out every qubit")
    tensor = dm.mat.reshape((2,) * (2 * n))
    # ket axis for qubit q sits at position n-1-q; bra axes follow, offset n
    ket = list(range(n))
    bra = list(range(n, 2 * n))
    for q in qubits:
        bra[n - 1 - q] = ket[n - 1 - q]
    kept_desc = sorted(set(range(n)) - set(qubits), reverse=True)
    out = [ket[n - 1 - q] for q in kept_desc] + [bra[n - 1 - q] for q in kept_desc]
    reduced = np.einsum(tensor, ket + bra, out)
    n_keep = n - len(qubits)
    dim = 2**n_keep
    return DensityMatrix(n_keep, reduced.reshape(dim, dim))


def oracle_pipeline(image, nt, hadamard=False):
    """Literal discard-in-the-middle pipeline; exact output distribution.

    Order: optional full Hadamard layer; full-register DFT; partial trace of
    the rule-1 qubits; dense inverse DFT on the remaining register; partial
    trace of the rule-2 qubits; optional Hadamard layer on the survivors;
    diagonal. Capped at n0 <= 10 (the density matrix is 4^n0 complex entries).
    """
    qi = encode_image(image)
    n0 = qi.n0
    if n0 > 10:
        raise ValueError(f"oracle is limited to 10 qubits, got {n0}")
    layout = plan_discards(n0, nt)
    amps = qi.state.amps
    if hadamard:
        amps = hadamard_matrix(n0) @ amps
    amps = dft_matrix(n0) @ amps
    rho = DensityMatrix(n0, np.outer(amps, np.conj(amps)))
    if layout.nt > 0:
        rho = trace_out(rho, layout.rule1_discards)
        n1 = n0 - layout.nt
        rho = apply_unitary(rho, np.conj(dft_matrix(n1)))
        # rule-2 indices are unchanged by dropping the top qubits
        rho = trace_out(rho, layout.rule2_discards)
    else:
        rho = apply_unitary(rho, np.conj(dft_matrix(n0)))
    if hadamard:
        rho = apply_unitary(rho, hadamard_matrix(layout.n2))
    return rho.diagonal()
