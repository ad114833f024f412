"""scikit-learn style transformers wrapping the pipeline.

Both transformers are stateless (fit only records the input width), follow
the fit/transform/get_params contract, and accept samples either flat
(n_samples, k*k) or as image stacks (n_samples, k, k); the output keeps the
input's layout. They compose with sklearn.pipeline.Pipeline, e.g.

    Pipeline([("down", QFTDownsampler(factor=1, hadamard=True)),
              ("shots", ShotReconstructor(levels=256, preset="adequate",
                                          random_state=7))])
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .pipeline import downsample, encode_values
from .reconstruct import grey_levels, sample_shots
from .validation import check_distribution


def _as_square_stack(X, what):
    """Normalize (n, k*k) / (n, k, k) input to a (n, k, k) float stack."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 2:
        side = int(np.sqrt(X.shape[1]))
        if side * side != X.shape[1]:
            raise ValueError(
                f"{what} rows of length {X.shape[1]} are not square images"
            )
        return X.reshape(X.shape[0], side, side), True
    if X.ndim == 3:
        if X.shape[1] != X.shape[2]:
            raise ValueError(f"{what} stack must be square, got {X.shape}")
        return X, False
    raise ValueError(f"{what} must be 2-D or 3-D, got shape {X.shape}")


class QFTDownsampler(TransformerMixin, BaseEstimator):
    """Transform image samples into their exact downsampled distributions.

    Parameters
    ----------
    factor : int, default 1
        Downsampling factor; output side is input side / 2^factor.
    hadamard : bool, default False
        Apply the paired Hadamard layers around the pipeline.
    """

    def __init__(self, factor=1, hadamard=False):
        self.factor = factor
        self.hadamard = hadamard

    def fit(self, X, y=None):
        stack, _ = _as_square_stack(X, "X")
        self.n_features_in_ = stack.shape[1] * stack.shape[2]
        return self

    def transform(self, X):
        stack, flat = _as_square_stack(X, "X")
        out = []
        for values in stack:
            comp = downsample(encode_values(values), self.factor, self.hadamard)
            out.append(comp.dist if flat else comp.grid())
        return np.asarray(out)


class ShotReconstructor(TransformerMixin, BaseEstimator):
    """Transform exact distributions into shot-sampled grey-level images.

    Parameters
    ----------
    levels : int, default 256
        Grey levels L; output values lie in [0, L] (L marks the white pixel).
    shots : int or None, default None
        Fixed shot count; when None the preset decides from L and the side.
    preset : {"conservative", "adequate"}, default "conservative"
        conservative = 4*L^2*d^2 shots, adequate = d^2*L^(3/2) shots.
    random_state : int or None
        Seed; row r of any transform uses child seed r, so results are
        reproducible and independent of the number of rows processed.
    """

    def __init__(self, levels=256, shots=None, preset="conservative",
                 random_state=None):
        self.levels = levels
        self.shots = shots
        self.preset = preset
        self.random_state = random_state

    def _shots_for(self, side):
        if self.shots is not None:
            return int(self.shots)
        if self.preset == "conservative":
            return 4 * int(self.levels) ** 2 * side**2
        if self.preset == "adequate":
            return int(np.ceil(side**2 * float(self.levels) ** 1.5))
        raise ValueError(
            f"unknown preset {self.preset!r}; use 'conservative' or 'adequate'"
        )

    def fit(self, X, y=None):
        stack, _ = _as_square_stack(X, "X")
        self.n_features_in_ = stack.shape[1] * stack.shape[2]
        return self

    def transform(self, X):
        stack, flat = _as_square_stack(X, "X")
        side = stack.shape[1]
        shots = self._shots_for(side)
        seeds = np.random.SeedSequence(self.random_state).spawn(stack.shape[0])
        out = np.empty_like(stack)
        for r, (grid, child) in enumerate(zip(stack, seeds)):
            dist = check_distribution(grid.reshape(-1))
            hist = sample_shots(dist, shots, seed=child)
            out[r] = grey_levels(hist, self.levels).levels.reshape(side, side)
        return out.reshape(stack.shape[0], -1) if flat else out
