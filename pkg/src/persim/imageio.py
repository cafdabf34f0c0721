"""Single decoding seam for image files (PNG, BMP, JPEG via Pillow)."""

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError

_EIGHT_BIT_MODES = {"1", "L", "P", "RGB", "RGBA", "LA", "CMYK", "YCbCr", "PA"}


def read_rgb(path):
    """Decode ``path`` into an ``(M, N, 3)`` uint8 array.

    Grayscale is replicated to three channels and alpha is dropped. Images
    with more than 8 bits per sample are rejected.
    """
    try:
        with Image.open(path) as im:
            if im.mode not in _EIGHT_BIT_MODES:
                raise DecodeError(f"{path}: unsupported image mode {im.mode} (8-bit only)")
            arr = np.asarray(im.convert("RGB"))
    except (OSError, UnidentifiedImageError, ValueError) as exc:
        if isinstance(exc, DecodeError):
            raise
        raise DecodeError(f"{path}: {exc}") from exc
    return arr


def write_rgb(path, img):
    """Save an ``(M, N, 3)`` or ``(M, N)`` uint8 array; format from the suffix."""
    Image.fromarray(np.asarray(img, dtype=np.uint8)).save(path)
