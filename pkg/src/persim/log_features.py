"""Laplacian-of-Gaussian kernels and direct 2-D convolution."""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError

_PAD_MODES = {"replicate": "edge", "zero": "constant", "reflect": "symmetric"}


@dataclass(frozen=True)
class ScaleParams:
    """Resolution ratio, LoG sigma and tabulated kernel edge length."""

    ratio: float
    sigma: float
    kernel_size: int

    def __post_init__(self):
        if not 0.0 < self.ratio <= 1.0:
            raise ParameterError(f"scale ratio must be in (0, 1], got {self.ratio}")
        if self.sigma <= 0:
            raise ParameterError(f"sigma must be positive, got {self.sigma}")
        if int(self.kernel_size) != self.kernel_size or self.kernel_size < 1:
            raise ParameterError(f"kernel size must be a positive integer, got {self.kernel_size}")

    def effective_size(self, literal_even=False):
        """Kernel edge actually used: even sizes are bumped to the next odd
        one unless ``literal_even`` is set."""
        k = int(self.kernel_size)
        if k % 2 == 0 and not literal_even:
            return k + 1
        return k


@dataclass(frozen=True)
class LogKernel:
    """Square LoG tap grid.

    ``origin`` is the index of the zero offset along both axes. For odd
    sizes it is the exact center; for even sizes it is the top-left pixel of
    the central 2x2 block.
    """

    taps: np.ndarray
    sigma: float
    size: int
    origin: int

    @property
    def offsets(self):
        return np.arange(self.size) - self.origin


def log_value(m, n, sigma):
    """Closed-form LoG response at integer offset ``(m, n)``."""
    r2 = np.asarray(m, dtype=np.float64) ** 2 + np.asarray(n, dtype=np.float64) ** 2
    s2 = float(sigma) ** 2
    return (1.0 / np.sqrt(2.0 * np.pi * s2)) * ((r2 - 2.0 * s2) / s2 ** 2) * np.exp(-r2 / (2.0 * s2))


def make_log_kernel(sigma, size):
    """Sample the LoG on a ``size`` x ``size`` grid of integer offsets.

    No renormalization is applied, so a window that is narrow relative to
    ``sigma`` gives a kernel whose taps do not sum to zero.
    """
    if sigma <= 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if int(size) != size or size < 1:
        raise ParameterError(f"kernel size must be a positive integer, got {size}")
    size = int(size)
    origin = (size - 1) // 2
    off = np.arange(size) - origin
    taps = log_value(off[:, None], off[None, :], sigma)
    return LogKernel(taps=taps, sigma=float(sigma), size=size, origin=origin)


def convolve(plane, kernel, boundary="replicate"):
    """Same-size 2-D convolution with explicit boundary extension.

    ``out[m, n] = sum_{i, j} plane[m - i, n - j] * w[i, j]`` where ``i, j``
    run over the kernel's offsets from its origin.

    Parameters
    ----------
    plane : array_like
      2-D input.
    kernel : LogKernel or array_like
      Weights; a bare array is anchored at index ``(k - 1) // 2`` per axis.
    boundary : {'replicate', 'zero', 'reflect'}
      How samples outside the plane are filled in.
    """
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2 or plane.size == 0:
        raise ShapeError(f"plane must be a non-empty 2-D array, got shape {plane.shape}")
    if isinstance(kernel, LogKernel):
        w = kernel.taps
        r0 = c0 = kernel.origin
    else:
        w = np.asarray(kernel, dtype=np.float64)
        if w.ndim != 2 or w.size == 0:
            raise ShapeError(f"kernel must be a non-empty 2-D array, got shape {w.shape}")
        r0, c0 = (w.shape[0] - 1) // 2, (w.shape[1] - 1) // 2
    try:
        mode = _PAD_MODES[boundary]
    except KeyError:
        raise ParameterError(f"unknown boundary policy {boundary!r}") from None

    kr, kc = w.shape
    # offsets i run over [-r0, kr - 1 - r0]
    i_max, j_max = kr - 1 - r0, kc - 1 - c0
    pad = ((i_max, r0), (j_max, c0))
    if mode == "symmetric" and (max(pad[0]) > plane.shape[0] or max(pad[1]) > plane.shape[1]):
        raise ShapeError("plane is smaller than the kernel radius for reflect boundary")
    padded = np.pad(plane, pad, mode=mode)

    M, N = plane.shape
    out = np.zeros_like(plane)
    for a in range(kr):
        top = i_max - (a - r0)
        for b in range(kc):
            left = j_max - (b - c0)
            out += w[a, b] * padded[top:top + M, left:left + N]
    return out


def log_response(L, params, literal_even=False):
    """LoG feature map of a lightness plane at one scale."""
    k = make_log_kernel(params.sigma, params.effective_size(literal_even))
    return convolve(L, k, boundary="replicate")
