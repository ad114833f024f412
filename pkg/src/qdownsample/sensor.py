"""Lattice light sensor: Gaussian-coupled sites integrating a classical field.

Each site (m, n) of an N x N lattice carries a Gaussian coupling window
g_mn(x, y) = exp(-w*(x - a_n)^2 - w*(y - b_m)^2); the sensor reading is the
overlap integral

    v_mn = integral psi(x, y) * conj(g_mn(x, y)) dx dy

evaluated by tensor-product Gauss-Legendre quadrature over a square of side
2 * support_radius around each site. Only the ratios |v_mn|^2 matter (any
global prefactor of the interaction drops out on normalization), so the
reading carries both the raw matrix v and probs = |v|^2 / sum|v|^2.

Axis convention: the probs matrix is a raster image, so row index m grows
downward while the physical y axis grows upward. With the default
``flip_y=True`` a site labeled (a_n, b_m) therefore couples at the physical
point (a_n, -b_m); a field feature at physical (x, y) shows up at the site
whose label is (x, -y). Set flip_y=False for a plain Cartesian lattice.

Validity caveat: the reading models only the single-excitation sector to
first order in the coupling; that is a good description only for weak,
short interactions, and it assumes the site windows barely overlap (see
overlap_audit).
"""

import configparser
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .pipeline import QuantumImage
from .simulator import Statevector
from .validation import DegenerateInputError

_ROW_CHUNK = 256  # sites integrated per vectorized block


@dataclass
class Field:
    """Classical field amplitude psi(x, y) plus an informational extent box.

    ``evaluator`` must broadcast over numpy arrays x, y. ``support_box`` is
    ((xmin, xmax), (ymin, ymax)) metadata describing where the field lives;
    quadrature windows are placed per site, so the box is informational.
    """

    evaluator: callable
    support_box: tuple = ((-6.0, 6.0), (-6.0, 6.0))

    def __call__(self, x, y):
        return self.evaluator(x, y)


def double_gaussian_field(
    amplitude=1.0,
    centers=((-1.5, -2.0), (2.0, 1.5)),
    widths=((0.35, 1.0), (1.0, 0.35)),
):
    """Sum of anisotropic Gaussian lobes; defaults give the two-lobe scene.

    Lobe i contributes amplitude * exp(-ax*(x-cx)^2 - ay*(y-cy)^2) with
    (cx, cy) = centers[i] and (ax, ay) = widths[i].
    """
    centers = [(float(cx), float(cy)) for cx, cy in centers]
    widths = [(float(ax), float(ay)) for ax, ay in widths]
    if len(centers) != len(widths):
        raise ValueError("need one width pair per lobe")
    for ax, ay in widths:
        if ax <= 0 or ay <= 0:
            raise ValueError(f"lobe widths must be positive, got ({ax}, {ay})")
    amplitude = float(amplitude)

    def evaluator(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for (cx, cy), (ax, ay) in zip(centers, widths):
            out += amplitude * np.exp(-ax * (x - cx) ** 2 - ay * (y - cy) ** 2)
        return out

    span = 3.0 / np.sqrt(min(min(w) for w in widths))
    xs = [c[0] for c in centers]
    ys = [c[1] for c in centers]
    box = ((min(xs) - span, max(xs) + span), (min(ys) - span, max(ys) + span))
    return Field(evaluator, box)


@dataclass
class CouplingGrid:
    """N x N lattice of Gaussian coupling windows."""

    side: int
    centers: np.ndarray  # (N*N, 2) label coordinates (a_n, b_m), row-major
    width: float
    support_radius: float
    flip_y: bool = True

    def __post_init__(self):
        self.side = int(self.side)
        self.centers = np.asarray(self.centers, dtype=float)
        if self.side < 1 or self.centers.shape != (self.side**2, 2):
            raise ValueError(
                f"centers shape {self.centers.shape} does not match "
                f"side {self.side}"
            )
        self.width = float(self.width)
        self.support_radius = float(self.support_radius)
        if self.width <= 0 or self.support_radius <= 0:
            raise ValueError("width and support radius must be positive")

    @property
    def spacing(self):
        if self.side == 1:
            return 0.0
        return float(self.centers[1, 0] - self.centers[0, 0])

    def physical_centers(self):
        """Quadrature centers: labels with y mirrored when flip_y is set."""
        phys = self.centers.copy()
        if self.flip_y:
            phys[:, 1] = -phys[:, 1]
        return phys


def make_grid(side, extent=(-4.0, 4.0), width=5.0, support_radius=None, flip_y=True):
    """Uniform lattice of ``side`` x ``side`` sites spanning ``extent``.

    Site (m, n) gets label coordinates (a_n, b_m) with a and b both linspace
    over the extent; support_radius defaults to 4 / sqrt(width), where the
    coupling has fallen to exp(-16) of its peak.
    """
    side = int(side)
    if side < 1:
        raise ValueError(f"lattice side must be >= 1, got {side}")
    lo, hi = float(extent[0]), float(extent[1])
    if hi <= lo:
        raise ValueError(f"invalid extent {extent}")
    axis = np.linspace(lo, hi, side) if side > 1 else np.array([(lo + hi) / 2])
    a, b = np.meshgrid(axis, axis, indexing="xy")
    centers = np.stack([a, b], axis=-1).reshape(-1, 2)
    width = float(width)
    if width <= 0:
        raise ValueError(f"coupling width must be positive, got {width}")
    if support_radius is None:
        support_radius = 4.0 / np.sqrt(width)
    return CouplingGrid(side, centers, width, float(support_radius), bool(flip_y))


@dataclass
class SensorReading:
    """Raw overlap matrix v (N x N) and its normalized probabilities."""

    v: np.ndarray
    probs: np.ndarray
    convergence_delta: float = None


def min_quadrature_nodes(grid):
    """At least 4 nodes per coupling width 1/sqrt(w) across the window."""
    return int(np.ceil(8.0 * grid.support_radius * np.sqrt(grid.width)))


def sense(field, grid, nodes=32, convergence_check=False):
    """Integrate the field against every site's coupling window.

    ``nodes`` is the Gauss-Legendre node count per axis; with
    ``convergence_check`` the integrals are recomputed at twice the
    resolution and the largest probability shift is stored on the reading.
    Raises DegenerateInputError if the field misses the sensor entirely.
    """
    nodes = int(nodes)
    floor = min_quadrature_nodes(grid)
    if nodes < floor:
        raise ValueError(
            f"need at least {floor} quadrature nodes per axis for this "
            f"grid (4 per coupling width), got {nodes}"
        )
    v = _integrate(field, grid, nodes)
    total = float(np.sum(np.abs(v) ** 2))
    if total <= 0.0 or not np.isfinite(total):
        raise DegenerateInputError(
            "sensor reading is identically zero (field misses the lattice)"
        )
    probs = np.abs(v) ** 2 / total
    delta = None
    if convergence_check:
        v2 = _integrate(field, grid, 2 * nodes)
        probs2 = np.abs(v2) ** 2 / float(np.sum(np.abs(v2) ** 2))
        delta = float(np.max(np.abs(probs2 - probs)))
    return SensorReading(v, probs, delta)


def _integrate(field, grid, nodes):
    """Shared-offset Gauss-Legendre quadrature over all site windows."""
    x1, w1 = leggauss(nodes)
    offs = grid.support_radius * x1
    wq = grid.support_radius * w1
    ox, oy = np.meshgrid(offs, offs, indexing="ij")
    weight2d = np.outer(wq, wq) * np.exp(-grid.width * (ox**2 + oy**2))
    centers = grid.physical_centers()
    v = np.empty(centers.shape[0], dtype=complex)
    for start in range(0, centers.shape[0], _ROW_CHUNK):
        block = centers[start : start + _ROW_CHUNK]
        xs = block[:, 0, None, None] + ox[None, :, :]
        ys = block[:, 1, None, None] + oy[None, :, :]
        vals = np.asarray(field(xs, ys), dtype=complex)
        v[start : start + block.shape[0]] = np.einsum(
            "nij,ij->n", vals, weight2d
        )
    return v.reshape(grid.side, grid.side)


def overlap_audit(grid, tol=1e-2, nodes=None):
    """Measured neighbor/self coupling overlap, at the probability level.

    Integrates g_00 against itself and against its nearest neighbor with the
    same quadrature used by sense(), and reports the squared ratio
    (cross/self)^2 — squared because only |v|^2 is observable. Returns
    (ratio, ok) where ok means the disjoint-support assumption holds at tol.
    For side-1 grids there is no neighbor and the ratio is 0.
    """
    if grid.side == 1:
        return 0.0, True
    if nodes is None:
        nodes = max(32, min_quadrature_nodes(grid))
    d = grid.spacing
    w = grid.width

    def site_gaussian(cx, cy):
        return Field(lambda x, y: np.exp(-w * (x - cx) ** 2 - w * (y - cy) ** 2))

    probe = make_grid(2, extent=(0.0, d), width=w,
                      support_radius=grid.support_radius, flip_y=False)
    reading = sense(site_gaussian(0.0, 0.0), probe, nodes=nodes)
    self_overlap = abs(reading.v[0, 0])
    cross_overlap = abs(reading.v[0, 1])
    ratio = float((cross_overlap / self_overlap) ** 2)
    return ratio, ratio <= tol


def encode_from_sensor(reading):
    """Repack the reading row-wise into an amplitude-encoded register.

    The per-site excitation amplitudes are flattened in row-major order and
    normalized; requires the lattice side to be a power of two so the result
    fits 2*log2(N) qubits exactly.
    """
    v = np.asarray(reading.v, dtype=complex)
    side = v.shape[0]
    if v.shape != (side, side):
        raise ValueError(f"reading must be square, got shape {v.shape}")
    if side < 2 or side & (side - 1):
        raise ValueError(
            f"lattice side must be a power of two >= 2 to encode, got {side}"
        )
    flat = v.reshape(-1)
    norm = np.sqrt(np.sum(np.abs(flat) ** 2))
    if norm <= 0:
        raise DegenerateInputError("cannot encode an all-zero reading")
    n0 = 2 * int(np.log2(side))
    return QuantumImage(Statevector(n0, flat / norm), side)


def load_sensor_config(path):
    """Read field/grid/quadrature parameters from an INI file.

    Schema (all keys optional; defaults in parentheses):

      [field]
      amplitude = 1.0
      centers   = -1.5,-2.0 ; 2.0,1.5     lobe centers, ';'-separated pairs
      widths    = 0.35,1.0 ; 1.0,0.35     per-lobe (ax, ay)

      [grid]
      side           = 64
      extent         = -4.0, 4.0
      width          = 5.0
      support_radius = (4/sqrt(width))
      flip_y         = true

      [quadrature]
      nodes             = 32
      convergence_check = false

    Returns (field, grid, quad_dict) ready for sense().
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise OSError(f"cannot read sensor config {path!r}")

    def pairs(raw):
        out = []
        for chunk in raw.split(";"):
            xy = [tok for tok in chunk.replace(",", " ").split() if tok]
            if len(xy) != 2:
                raise ValueError(f"expected 'x,y' pairs, got {raw!r}")
            out.append((float(xy[0]), float(xy[1])))
        return out

    fsec = parser["field"] if parser.has_section("field") else {}
    field = double_gaussian_field(
        amplitude=float(fsec.get("amplitude", 1.0)),
        centers=pairs(fsec.get("centers", "-1.5,-2.0 ; 2.0,1.5")),
        widths=pairs(fsec.get("widths", "0.35,1.0 ; 1.0,0.35")),
    )
    gsec = parser["grid"] if parser.has_section("grid") else {}
    extent = pairs(gsec.get("extent", "-4.0, 4.0"))[0]
    radius = gsec.get("support_radius", "")
    grid = make_grid(
        side=int(gsec.get("side", 64)),
        extent=extent,
        width=float(gsec.get("width", 5.0)),
        support_radius=float(radius) if str(radius).strip() else None,
        flip_y=str(gsec.get("flip_y", "true")).strip().lower()
        in ("1", "true", "yes", "on"),
    )
    qsec = parser["quadrature"] if parser.has_section("quadrature") else {}
    quad = {
        "nodes": int(qsec.get("nodes", 32)),
        "convergence_check": str(qsec.get("convergence_check", "false"))
        .strip()
        .lower()
        in ("1", "true", "yes", "on"),
    }
    return field, grid, quad
