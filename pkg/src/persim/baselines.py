"""Pixel-wise RMSE and PSNR."""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError


@dataclass(frozen=True)
class PsnrParams:
    peak: float = 255.0
    cap: float = 100.0

    def __post_init__(self):
        if self.peak <= 0:
            raise ParameterError(f"peak must be positive, got {self.peak}")


def rmse(ref, dist):
    """Root of the mean squared difference over all pixels and channels."""
    ref = np.asarray(ref, dtype=np.float64)
    dist = np.asarray(dist, dtype=np.float64)
    if ref.shape != dist.shape:
        raise ShapeError(f"image shapes differ: {ref.shape} vs {dist.shape}")
    if ref.size == 0:
        raise ShapeError("images have no samples")
    d = ref - dist
    return float(np.sqrt(np.mean(d * d)))


def psnr(ref, dist, params=PsnrParams()):
    """Peak signal-to-noise ratio in dB; identical inputs return ``params.cap``."""
    e = rmse(ref, dist)
    if e == 0.0:
        return float(params.cap)
    return float(20.0 * np.log10(params.peak / e))
