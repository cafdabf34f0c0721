"""Separable bicubic resampling of 2-D planes.

Uses the Keys cubic convolution kernel with ``a = -0.5`` and pixel-center
alignment (``x_in = (x_out + 0.5) / scale - 0.5``), the same convention as
common ``imresize`` implementations. Out-of-range taps are clamped to the
edge. No anti-aliasing prefilter is applied when shrinking.
"""

import numpy as np

from .errors import ParameterError, ShapeError


def cubic_weight(x, a=-0.5):
    """Keys cubic convolution kernel evaluated at distance ``x``."""
    x = np.abs(np.asarray(x, dtype=np.float64))
    x2, x3 = x * x, x * x * x
    near = (a + 2.0) * x3 - (a + 3.0) * x2 + 1.0
    far = a * x3 - 5.0 * a * x2 + 8.0 * a * x - 4.0 * a
    return np.where(x <= 1.0, near, np.where(x < 2.0, far, 0.0))


def _taps(n_in, n_out):
    """Source indices (edge-clamped) and weights, each ``(n_out, 4)``."""
    if n_in < 1 or n_out < 1:
        raise ShapeError(f"lengths must be positive, got {n_in} -> {n_out}")
    scale = n_out / n_in
    centers = (np.arange(n_out) + 0.5) / scale - 0.5
    idx = np.floor(centers).astype(int)[:, None] - 1 + np.arange(4)[None, :]
    w = cubic_weight(centers[:, None] - idx)
    return np.clip(idx, 0, n_in - 1), w


def interpolation_matrix(n_in, n_out):
    """Dense ``(n_out, n_in)`` matrix equivalent of the 1-D resampling."""
    idx, w = _taps(n_in, n_out)
    W = np.zeros((n_out, n_in))
    np.add.at(W, (np.repeat(np.arange(n_out), 4), idx.ravel()), w.ravel())
    return W


def _resize_axis0(plane, n_out):
    idx, w = _taps(plane.shape[0], n_out)
    # fixed summation order keeps results bit-reproducible
    out = w[:, 0, None] * plane[idx[:, 0]]
    for t in range(1, 4):
        out += w[:, t, None] * plane[idx[:, t]]
    return out


def resize(plane, shape):
    """Bicubic resize of a 2-D plane to ``shape = (rows, cols)``."""
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2 or plane.size == 0:
        raise ShapeError(f"plane must be a non-empty 2-D array, got shape {plane.shape}")
    rows, cols = (int(s) for s in shape)
    if (rows, cols) == plane.shape:
        return plane.copy()
    tmp = _resize_axis0(plane, rows)
    return np.ascontiguousarray(_resize_axis0(tmp.T, cols).T)


def scaled_shape(shape, ratio):
    """``round(ratio * dim)`` per axis (halves round up), at least 1."""
    if not 0.0 < ratio <= 1.0:
        raise ParameterError(f"ratio must be in (0, 1], got {ratio}")
    return tuple(max(1, int(np.floor(ratio * s + 0.5))) for s in shape)
