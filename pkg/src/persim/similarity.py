"""Pixel-wise similarity maps between reference and distorted planes."""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError


@dataclass(frozen=True)
class SimilarityConstants:
    """Stabilizers for the LoG (c1, c2), a (c3, c4) and b (c5, c6) maps."""

    c1: float = 0.001
    c2: float = 0.001
    c3: float = 0.001
    c4: float = 0.001
    c5: float = 0.001
    c6: float = 0.001

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4", "c5", "c6"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")


def similarity_map(p1, p2, c_num=0.001, c_den=0.001):
    """Return ``(2 p1 p2 + c_num) / (p1**2 + p2**2 + c_den)`` pixel-wise.

    With ``c_num == c_den`` the result lies in [-1, 1] and equals 1 exactly
    where the planes agree. It is negative wherever the inputs have opposite
    signs and ``|2 p1 p2| > c_num``.
    """
    p1 = np.asarray(p1, dtype=np.float64)
    p2 = np.asarray(p2, dtype=np.float64)
    if p1.shape != p2.shape:
        raise ShapeError(f"plane shapes differ: {p1.shape} vs {p2.shape}")
    if not (c_num > 0 and c_den > 0):
        raise ParameterError("similarity constants must be positive")
    return (2.0 * p1 * p2 + c_num) / (p1 * p1 + p2 * p2 + c_den)


def chroma_similarities(ref, dist, consts=SimilarityConstants()):
    """aSIM and bSIM maps for two :class:`~persim.color.LabImage` objects."""
    if ref.shape != dist.shape:
        raise ShapeError(f"image shapes differ: {ref.shape} vs {dist.shape}")
    asim = similarity_map(ref.a, dist.a, consts.c3, consts.c4)
    bsim = similarity_map(ref.b, dist.b, consts.c5, consts.c6)
    return asim, bsim
