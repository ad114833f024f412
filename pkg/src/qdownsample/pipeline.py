"""Image <-> register encoding and the QFT downsampling pipeline.

The pipeline turns an N x N image (N a power of two) into a register of
n0 = 2*log2(N) qubits via amplitude encoding, then shrinks it by a factor
2^nt per axis by discarding nt qubit pairs:

  1. optional Hadamard layer on all n0 qubits,
  2. QFT on the full register,
  3. discard the top nt qubits (high-frequency rule),
  4. inverse QFT on the remaining n1 = n0 - nt qubits,
  5. discard qubits [n0/2 - nt, n0/2 - 1] (redundancy rule),
  6. optional Hadamard layer on the surviving n2 = n0 - 2*nt qubits.

Because every unitary after a discard acts only on qubits that survive all
discards, the discards commute with the remaining unitaries; we therefore run
the whole pipeline pure-state and marginalize the probabilities once at the
end (deferred marginalization). density.oracle_pipeline implements the
literal discard-in-the-middle order as an independent cross-check.
"""

from dataclasses import dataclass, field

import numpy as np

from .simulator import (
    QubitRange,
    Statevector,
    apply_hadamard_layer,
    apply_qft,
    marginalize,
    probabilities,
)
from .validation import (
    DegenerateInputError,
    check_pixel_range,
    check_square_image,
)


@dataclass
class PixelImage:
    """N x N integer grey image with bit depth ``depth_bits``."""

    pixels: np.ndarray
    depth_bits: int

    def __post_init__(self):
        check_square_image(np.asarray(self.pixels, dtype=float))
        self.pixels = check_pixel_range(self.pixels, self.depth_bits)
        self.depth_bits = int(self.depth_bits)

    @property
    def side(self):
        return self.pixels.shape[0]

    @property
    def levels(self):
        """Number of grey levels L = 2^depth_bits."""
        return 2**self.depth_bits

    @property
    def total_brightness(self):
        return int(self.pixels.sum())


@dataclass
class QuantumImage:
    """Amplitude-encoded image: n0 = 2*log2(side) qubits."""

    state: Statevector
    side: int

    def __post_init__(self):
        self.side = int(self.side)
        if 2**self.state.n != self.side**2:
            raise ValueError(
                f"state of {self.state.n} qubits cannot hold a "
                f"{self.side} x {self.side} image"
            )

    @property
    def n0(self):
        return self.state.n


@dataclass
class RegisterLayout:
    """Index bookkeeping for the two discard rules."""

    n0: int
    nt: int
    rule1_discards: list = field(init=False)
    rule2_discards: list = field(init=False)
    kept: list = field(init=False)

    def __post_init__(self):
        n0, nt = int(self.n0), int(self.nt)
        if n0 < 2 or n0 % 2:
            raise ValueError(f"register size must be even and >= 2, got {n0}")
        if not 0 <= nt < n0 // 2:
            raise ValueError(
                f"downsampling factor must satisfy 0 <= nt < {n0 // 2}, got {nt}"
            )
        self.n0, self.nt = n0, nt
        self.rule1_discards = list(range(n0 - nt, n0))
        self.rule2_discards = list(range(n0 // 2 - nt, n0 // 2))
        dropped = set(self.rule1_discards) | set(self.rule2_discards)
        self.kept = [q for q in range(n0) if q not in dropped]

    @property
    def n2(self):
        return self.n0 - 2 * self.nt


@dataclass
class CompressedImage:
    """Exact output distribution over the surviving n2 qubits."""

    dist: np.ndarray
    side: int

    def __post_init__(self):
        self.dist = np.asarray(self.dist, dtype=float)
        self.side = int(self.side)
        if self.dist.shape != (self.side**2,):
            raise ValueError(
                f"distribution length {self.dist.size} does not match "
                f"side {self.side}"
            )

    def grid(self):
        return devectorize(self.dist, self.side)


def vectorize(image):
    """Row-wise flattening: output index k = row*N + col."""
    if isinstance(image, PixelImage):
        return image.pixels.reshape(-1).astype(float)
    return check_square_image(image).reshape(-1)


def devectorize(dist, side):
    """Inverse of vectorize: grid[row, col] = dist[row*side + col]."""
    dist = np.asarray(dist, dtype=float)
    side = int(side)
    if dist.shape != (side**2,):
        raise ValueError(
            f"vector of length {dist.size} does not devectorize to "
            f"{side} x {side}"
        )
    return dist.reshape(side, side)


def encode_values(values):
    """Amplitude-encode a nonnegative square array (no integer constraint).

    Amplitudes are the square roots of the values normalized to unit sum, in
    row-major order. Raises on an all-zero input (undefined normalization).
    """
    values = check_square_image(values)
    total = values.sum()
    if total <= 0:
        raise ValueError("cannot encode an all-black image (zero brightness)")
    side = values.shape[0]
    n0 = 2 * int(np.log2(side))
    amps = np.sqrt(values.reshape(-1) / total).astype(complex)
    return QuantumImage(Statevector(n0, amps), side)


def encode_image(image):
    """Amplitude-encode a PixelImage (pixel values scaled by total brightness)."""
    return encode_values(np.asarray(image.pixels, dtype=float))


def plan_discards(n0, nt):
    """RegisterLayout for the two discard rules at the given factor."""
    return RegisterLayout(n0, nt)


def downsample(qi, nt, hadamard=False):
    """Run the full downsampling pipeline; exact output distribution.

    Returns a CompressedImage of side N / 2^nt. The optional Hadamard flag
    controls both Hadamard layers (before encoding into frequency space and
    after the final discard) together.
    """
    layout = plan_discards(qi.n0, nt)
    n0 = qi.n0
    state = qi.state
    if hadamard:
        state = apply_hadamard_layer(state, list(range(n0)))
    state = apply_qft(state, QubitRange(0, n0 - 1))
    n1 = n0 - layout.nt  # always >= n0/2 + 1, so the range below is valid
    state = apply_qft(state, QubitRange(0, n1 - 1), inverse=True)
    if hadamard:
        state = apply_hadamard_layer(state, layout.kept)
    dist = marginalize(probabilities(state), n0, layout.kept)
    return CompressedImage(dist, qi.side // 2**layout.nt)


def downsample_preserving(qi, nt, method="project"):
    """Resolution-preserving variant: reset rule-1 qubits instead of dropping.

    After the full-register QFT the rule-1 qubits are reinitialized to |0>
    and the inverse QFT runs on the whole register, so the output keeps the
    input resolution. Two semantics are implemented:

    * ``method="project"`` (scalable): zero every amplitude where a rule-1
      qubit is 1, renormalize, proceed pure-state. Raises
      DegenerateInputError if no weight survives the projection.
    * ``method="exact"`` (n0 <= 10): the reset as a trace-and-replace on the
      density matrix, evaluated as the weighted mixture over rule-1 branches.

    The two agree exactly when the post-QFT state has support only on the
    rule-1 |0...0> block (e.g. a uniform image) and differ at the percent
    level in general; see README.
    """
    layout = plan_discards(qi.n0, nt)
    n0, nt = layout.n0, layout.nt
    state = apply_qft(qi.state, QubitRange(0, n0 - 1))
    if nt == 0:
        back = apply_qft(state, QubitRange(0, n0 - 1), inverse=True)
        return probabilities(back)
    # rule-1 qubits are the top nt bits: branch index = leading axis
    branches = state.amps.reshape(2**nt, 2 ** (n0 - nt))
    if method == "project":
        weight = float(np.sum(np.abs(branches[0]) ** 2))
        if weight < 1e-12:
            raise DegenerateInputError(
                "state has no weight on the kept subspace after projection"
            )
        amps = np.zeros_like(state.amps).reshape(2**nt, -1)
        amps[0] = branches[0] / np.sqrt(weight)
        reset = Statevector(n0, amps.reshape(-1))
        back = apply_qft(reset, QubitRange(0, n0 - 1), inverse=True)
        return probabilities(back)
    if method == "exact":
        if n0 > 10:
            raise ValueError(
                f"exact trace-and-replace is limited to 10 qubits, got {n0}"
            )
        out = np.zeros(2**n0)
        for branch in branches:
            weight = float(np.sum(np.abs(branch) ** 2))
            if weight == 0.0:
                continue
            amps = np.zeros((2**nt, 2 ** (n0 - nt)), dtype=complex)
            amps[0] = branch / np.sqrt(weight)
            back = apply_qft(
                Statevector(n0, amps.reshape(-1)),
                QubitRange(0, n0 - 1),
                inverse=True,
            )
            out += weight * probabilities(back)
        return out
    raise ValueError(f"unknown method {method!r}; use 'project' or 'exact'")


@dataclass
class TileSet:
    """Row-major square blocks of an image plus reassembly metadata."""

    blocks: list
    blocks_per_side: int
    block_side: int

    def __iter__(self):
        return iter(self.blocks)


def tile(image, b):
    """Split into (N / 2^(b/2))^2 blocks of side 2^(b/2), row-major.

    ``b`` is the largest usable register size: each block of side 2^(b/2)
    encodes into exactly b qubits. Requires b even and >= 2 (a side-1 block
    cannot be encoded) and block side <= N.
    """
    b = int(b)
    if b < 2 or b % 2:
        raise ValueError(f"block register size must be even and >= 2, got {b}")
    block_side = 2 ** (b // 2)
    n = image.side
    if block_side > n:
        raise ValueError(
            f"block side {block_side} exceeds image side {n}"
        )
    per_side = n // block_side
    blocks = []
    for br in range(per_side):
        for bc in range(per_side):
            sub = image.pixels[
                br * block_side : (br + 1) * block_side,
                bc * block_side : (bc + 1) * block_side,
            ]
            blocks.append(PixelImage(sub.copy(), image.depth_bits))
    return TileSet(blocks, per_side, block_side)


def untile(tiles, depth_bits=None):
    """Reassemble the blocks of a TileSet into one PixelImage."""
    per_side, block_side = tiles.blocks_per_side, tiles.block_side
    if len(tiles.blocks) != per_side**2:
        raise ValueError(
            f"expected {per_side ** 2} blocks, got {len(tiles.blocks)}"
        )
    if depth_bits is None:
        depth_bits = tiles.blocks[0].depth_bits
    n = per_side * block_side
    pixels = np.zeros((n, n), dtype=np.int64)
    for idx, block in enumerate(tiles.blocks):
        br, bc = divmod(idx, per_side)
        pixels[
            br * block_side : (br + 1) * block_side,
            bc * block_side : (bc + 1) * block_side,
        ] = block.pixels
    return PixelImage(pixels, depth_bits)


def downsample_tiled(image, b, nt, hadamard=False):
    """Downsample each block separately and reassemble one probability grid.

    Each block is encoded against its own brightness, so its output
    distribution is rescaled by the block's share of the total brightness;
    the mosaic then sums to 1 like the untiled output. All-black blocks
    contribute zero. Output side is N / 2^nt, as in the untiled pipeline.
    """
    tiles = tile(image, b)
    if not 0 <= int(nt) < b // 2:
        raise ValueError(
            f"downsampling factor must satisfy 0 <= nt < {b // 2} for "
            f"{b}-qubit blocks, got {nt}"
        )
    total = image.total_brightness
    if total <= 0:
        raise ValueError("cannot encode an all-black image (zero brightness)")
    out_block = tiles.block_side // 2**nt
    per_side = tiles.blocks_per_side
    mosaic = np.zeros((per_side * out_block, per_side * out_block))
    for idx, block in enumerate(tiles.blocks):
        share = block.total_brightness / total
        if share == 0.0:
            continue
        comp = downsample(encode_image(block), nt, hadamard)
        br, bc = divmod(idx, per_side)
        mosaic[
            br * out_block : (br + 1) * out_block,
            bc * out_block : (bc + 1) * out_block,
        ] = share * comp.grid()
    return mosaic
