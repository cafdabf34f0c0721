"""sRGB to CIE 1976 L*a*b* conversion (D65 white, 2 degree observer).

Images are handled as ``(M, N, 3)`` arrays of 8-bit sRGB samples. The
result is a :class:`LabImage` holding the three planes separately since
every later stage treats lightness and chroma differently.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError

# IEC 61966-2-1 linear sRGB -> XYZ
SRGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])

# Reference white taken from the matrix itself so that R = G = B maps to
# X/Xn = Y/Yn = Z/Zn exactly and gray lands on the a/b origin.
D65_WHITE = SRGB_TO_XYZ.sum(axis=1)

_DELTA = 6.0 / 29.0


@dataclass(frozen=True)
class LabImage:
    """Three same-sized planes in CIELAB coordinates."""

    L: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if not (self.L.shape == self.a.shape == self.b.shape):
            raise ShapeError(
                f"Lab planes differ in shape: {self.L.shape}, "
                f"{self.a.shape}, {self.b.shape}")
        if self.L.ndim != 2 or self.L.size == 0:
            raise ShapeError(f"Lab planes must be non-empty 2-D, got {self.L.shape}")

    @property
    def shape(self):
        return self.L.shape

    def planes(self):
        return self.L, self.a, self.b


def as_rgb(img):
    """Validate an 8-bit RGB image and return it as float64 ``(M, N, 3)``.

    Grayscale ``(M, N)`` and ``(M, N, 1)`` inputs are replicated to three
    channels.
    """
    arr = np.asarray(img)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    if arr.ndim == 2:
        arr = np.stack([arr] * 3, axis=-1)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ShapeError(f"expected an (M, N, 3) RGB image, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ShapeError("image has no pixels")
    arr = arr.astype(np.float64)
    if arr.min() < 0 or arr.max() > 255:
        raise ShapeError("RGB samples must lie in [0, 255]")
    return arr


def stack_planes(r, g, b):
    """Build an RGB image from three separate planes, checking dimensions."""
    r, g, b = (np.asarray(p) for p in (r, g, b))
    if not (r.shape == g.shape == b.shape):
        raise ShapeError(f"channel shapes differ: {r.shape}, {g.shape}, {b.shape}")
    return np.stack([r, g, b], axis=-1)


def srgb_to_linear(v):
    """Inverse sRGB companding of samples normalized to [0, 1]."""
    v = np.asarray(v, dtype=np.float64)
    return np.where(v <= 0.04045, v / 12.92, ((v + 0.055) / 1.055) ** 2.4)


def _lab_f(t):
    return np.where(t > _DELTA ** 3, np.cbrt(t), t / (3 * _DELTA ** 2) + 4.0 / 29.0)


def rgb_to_lab(img):
    """Convert an 8-bit sRGB image to :class:`LabImage`.

    Parameters
    ----------
    img : array_like
      ``(M, N, 3)`` array with samples in [0, 255]; ``(M, N)`` grayscale is
      promoted by channel replication.

    Returns
    -------
    LabImage
      L in [0, 100]; a and b roughly in [-128, 127].
    """
    rgb = srgb_to_linear(as_rgb(img) / 255.0)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    # elementwise rather than matmul: BLAS results can vary with buffer alignment
    fx, fy, fz = (_lab_f((m[0] * r + m[1] * g + m[2] * b) / w)
                  for m, w in zip(SRGB_TO_XYZ, D65_WHITE))
    L = 116.0 * fy - 16.0
    a = 500.0 * (fx - fy)
    b = 200.0 * (fy - fz)
    # f(0) = 4/29 gives L = 0 up to rounding; keep L non-negative
    return LabImage(np.maximum(L, 0.0), a, b)


LAB_ENCODINGS = ("cie", "8bit")


def encode_lab(lab, encoding="cie"):
    """Re-express Lab planes in the numeric range the metric operates on.

    ``"cie"`` leaves the CIE values untouched. ``"8bit"`` uses the 8-bit
    ICC-style scaling ``(L * 255 / 100, a + 128, b + 128)`` without rounding;
    with it the chroma similarities no longer saturate around neutral colors.
    """
    if encoding == "cie":
        return lab
    if encoding == "8bit":
        return LabImage(lab.L * (255.0 / 100.0), lab.a + 128.0, lab.b + 128.0)
    raise ParameterError(f"unknown Lab encoding {encoding!r}")
