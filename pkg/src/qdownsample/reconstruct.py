"""Shot sampling and statistical image reconstruction.

RNG contract (fixed so results are bit-reproducible across platforms):
  * every seed is fed to numpy.random.default_rng (PCG64); anything that
    constructor accepts (int, None, SeedSequence, Generator) is valid;
  * sampling draws uniforms in outcome order and inverts the cumulative
    distribution with searchsorted (side="right"); draws are consumed in a
    single stream, chunked only for memory, so chunk size never changes the
    result;
  * fluctuation_study derives one child seed per repeat via
    SeedSequence(seed).spawn(repeats);
  * adaptive_reconstruct consumes one stream across all batches.

Grey levels: g_j = round(f_j * L / f_w), round half up, clamped to [0, L].
The maximum-frequency pixel(s) get exactly L — a sentinel one past the top
representable level L-1; file export clamps it (see pgm.py / cli.py). The
confidence half-width per pixel is 2*sqrt(f(1-f)*L^2/(f_w^2*S)) grey levels,
which treats f_w as exact; for distributions without a dominant peak the
extra f_w noise makes this an underestimate (see README).
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .validation import check_distribution

_CHUNK = 1 << 20


@dataclass
class ShotHistogram:
    """Outcome counts from S computational-basis measurements."""

    counts: np.ndarray
    total_shots: int

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        self.total_shots = int(self.total_shots)
        if self.counts.ndim != 1 or np.any(self.counts < 0):
            raise ValueError("counts must be a 1-D nonnegative integer vector")
        if self.counts.sum() != self.total_shots:
            raise ValueError(
                f"counts sum to {self.counts.sum()}, expected {self.total_shots}"
            )

    @property
    def frequencies(self):
        return self.counts / self.total_shots


@dataclass
class GreyReconstruction:
    """Quantized grey levels plus the white reference and per-pixel CIs."""

    levels: np.ndarray
    raw_levels: np.ndarray
    white_freq: float
    ci_halfwidths: np.ndarray


class AdaptiveResult(NamedTuple):
    reconstruction: GreyReconstruction
    shots_used: int
    converged: bool


@dataclass
class FluctuationStudy:
    """Per-pixel std of grey levels across repeats, plus its histogram."""

    stds: np.ndarray
    hist_counts: np.ndarray
    hist_edges: np.ndarray


def sample_shots(dist, shots, seed=None):
    """Draw ``shots`` outcomes from ``dist`` (multinomial, inverse CDF)."""
    dist = check_distribution(dist)
    shots = int(shots)
    if shots < 1:
        raise ValueError(f"shot count must be >= 1, got {shots}")
    rng = np.random.default_rng(seed)
    counts = _sample_counts(dist, shots, rng)
    return ShotHistogram(counts, shots)


def _sample_counts(dist, shots, rng):
    """Inverse-CDF sampling from an existing generator (single stream)."""
    cum = np.cumsum(dist)
    counts = np.zeros(dist.size, dtype=np.int64)
    remaining = shots
    while remaining > 0:
        block = min(_CHUNK, remaining)
        u = rng.random(block)
        idx = np.searchsorted(cum, u, side="right")
        # guards u landing in the float slack above cum[-1] ~ 1
        idx = np.minimum(idx, dist.size - 1)
        counts += np.bincount(idx, minlength=dist.size)
        remaining -= block
    return counts


def grey_levels(hist, levels):
    """Quantize outcome frequencies against the white reference f_w."""
    levels = int(levels)
    if levels < 1:
        raise ValueError(f"grey level count must be >= 1, got {levels}")
    if hist.total_shots < 1 or hist.counts.max() == 0:
        raise ValueError("histogram is empty (white frequency undefined)")
    f = hist.frequencies
    f_w = float(f.max())
    raw = f * levels / f_w
    g = np.clip(np.floor(raw + 0.5), 0, levels).astype(np.int64)
    ci = 2.0 * np.sqrt(
        f * (1.0 - f) * levels**2 / (f_w**2 * hist.total_shots)
    )
    return GreyReconstruction(g, raw, f_w, ci)


def sample_size(levels, side, f_w_hint=None):
    """Shots needed for every pixel CI to be at most one grey level.

    With no hint this is the worst case f_w = 1/side^2 (a flat "all white"
    output): S = 4 * L^2 * d^2. With a hint, the bound solves the CI formula
    at the hinted white frequency: f(1-f) <= 1/4 in general, but f(1-f) <= f_w
    once f_w >= 1/2, giving the two branches.
    """
    levels = int(levels)
    side = int(side)
    if levels < 2:
        raise ValueError(f"grey level count must be >= 2, got {levels}")
    if side < 1:
        raise ValueError(f"output side must be >= 1, got {side}")
    if f_w_hint is None:
        return 4 * levels**2 * side**2
    f_w = float(f_w_hint)
    if not 0.0 < f_w <= 1.0:
        raise ValueError(f"white frequency hint must be in (0, 1], got {f_w}")
    if f_w >= 0.5:
        return int(np.ceil(levels**2 / f_w**2))
    return int(np.ceil(4 * levels**2 / f_w**2))


def adaptive_reconstruct(
    dist, levels, target_fraction=0.95, batch=1024, max_shots=1 << 22, seed=None
):
    """Sample in batches until enough pixels have CI <= 1 grey level.

    Stops as soon as at least ``target_fraction`` of the pixels have a
    confidence half-width of at most one grey level, or when ``max_shots``
    is reached (the last batch is truncated to land exactly on it).
    Returns (reconstruction, shots_used, converged).
    """
    dist = check_distribution(dist)
    if not 0.0 < target_fraction <= 1.0:
        raise ValueError(
            f"target fraction must be in (0, 1], got {target_fraction}"
        )
    batch = int(batch)
    max_shots = int(max_shots)
    if batch < 1 or max_shots < 1:
        raise ValueError("batch and max_shots must be >= 1")
    rng = np.random.default_rng(seed)
    counts = np.zeros(dist.size, dtype=np.int64)
    used = 0
    recon = None
    while used < max_shots:
        block = min(batch, max_shots - used)
        counts += _sample_counts(dist, block, rng)
        used += block
        recon = grey_levels(ShotHistogram(counts, used), levels)
        if np.mean(recon.ci_halfwidths <= 1.0) >= target_fraction:
            return AdaptiveResult(recon, used, True)
    return AdaptiveResult(recon, used, False)


def fluctuation_study(dist, shots, repeats, levels, seed=None, bins=20):
    """Repeat the reconstruction and collect per-pixel grey-level stds.

    Each repeat gets its own child seed (spawned from ``seed``), so repeats
    are independent and the whole study is reproducible. Stds use ddof=1.
    """
    dist = check_distribution(dist)
    repeats = int(repeats)
    if repeats < 2:
        raise ValueError(f"need at least 2 repeats, got {repeats}")
    children = np.random.SeedSequence(seed).spawn(repeats)
    greys = np.empty((repeats, dist.size))
    for r, child in enumerate(children):
        hist = sample_shots(dist, shots, seed=child)
        greys[r] = grey_levels(hist, levels).levels
    stds = np.std(greys, axis=0, ddof=1)
    hist_counts, hist_edges = np.histogram(stds, bins=bins)
    return FluctuationStudy(stds, hist_counts, hist_edges)


def stats_payload(
    shots=None, f_w=None, grey=None, ci=None, std_map=None, histogram=None
):
    """Assemble the documented stats-JSON structure (README: JSON schemas).

    Keys are always present; entries a command does not compute are null.
    ``histogram`` is a (counts, edges) pair.
    """
    return {
        "shots": None if shots is None else int(shots),
        "f_w": None if f_w is None else float(f_w),
        "grey_levels": None if grey is None else np.asarray(grey).tolist(),
        "ci_halfwidths": None if ci is None else np.asarray(ci).tolist(),
        "std_map": None if std_map is None else np.asarray(std_map).tolist(),
        "histogram": None
        if histogram is None
        else {
            "counts": np.asarray(histogram[0]).tolist(),
            "edges": np.asarray(histogram[1]).tolist(),
        },
    }
