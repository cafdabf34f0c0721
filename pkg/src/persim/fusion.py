"""Channel and resolution fusion, pooling, and the PerSIM family of scores."""

from dataclasses import dataclass

import numpy as np

from .color import encode_lab
from .config import PersimConfig
from .errors import ParameterError, ShapeError
from .log_features import log_response
from .resample import resize, scaled_shape
from .similarity import chroma_similarities, similarity_map

METRIC_IDS = ("PerSIM", "PerSIM_SR", "LogSIM", "PSNR", "RMSE")


@dataclass(frozen=True)
class MetricScore:
    value: float
    metric: str
    reference: str = None
    distorted: str = None

    def __float__(self):
        return float(self.value)


def fuse_channels(logsim, asim, bsim, log_power=4.0, chroma_power=2.0):
    """Pixel-wise ``min(logsim**log_power, asim**chroma_power, bsim**chroma_power)``."""
    logsim, asim, bsim = (np.asarray(m, dtype=np.float64) for m in (logsim, asim, bsim))
    if not (logsim.shape == asim.shape == bsim.shape):
        raise ShapeError(f"map shapes differ: {logsim.shape}, {asim.shape}, {bsim.shape}")
    return np.minimum(np.minimum(logsim ** log_power, asim ** chroma_power), bsim ** chroma_power)


def pool_and_map(fused, c7=25.0):
    """Mean-pool a quality map and raise the mean to ``c7``.

    A negative mean is scored as 0.
    """
    fused = np.asarray(fused, dtype=np.float64)
    if fused.size == 0:
        raise ShapeError("cannot pool an empty map")
    mean = float(fused.mean())
    if mean <= 0.0:
        return 0.0
    return mean ** c7


def geometric_mean_maps(maps):
    """Pixel-wise geometric mean of same-sized maps.

    Pixels whose product is negative are set to 0 before taking the root. A
    single map is returned unchanged.
    """
    maps = [np.asarray(m, dtype=np.float64) for m in maps]
    if not maps:
        raise ShapeError("need at least one map")
    shape = maps[0].shape
    if any(m.shape != shape for m in maps):
        raise ShapeError(f"map shapes differ: {[m.shape for m in maps]}")
    if len(maps) == 1:
        return maps[0].copy()
    prod = maps[0].copy()
    for m in maps[1:]:
        prod *= m
    return np.maximum(prod, 0.0) ** (1.0 / len(maps))


def minimum_image_size(cfg=PersimConfig()):
    """Smallest side length for which every scale still fits its kernel."""
    sizes = cfg.kernel_sizes()
    n = 1
    while any(scaled_shape((n,), s.ratio)[0] < k for s, k in zip(cfg.scales, sizes)):
        n += 1
    return n


def _prepare(ref, dist, cfg):
    if ref.shape != dist.shape:
        raise ShapeError(f"image shapes differ: {ref.shape} vs {dist.shape}")
    need = minimum_image_size(cfg)
    if min(ref.shape) < need:
        raise ParameterError(
            f"image of size {ref.shape[0]}x{ref.shape[1]} is too small; "
            f"each side must be at least {need} pixels for the configured scales")
    return encode_lab(ref, cfg.lab_encoding), encode_lab(dist, cfg.lab_encoding)


def _scale_maps(ref, dist, scale, cfg, with_chroma=True):
    """LoG, a and b similarity maps at one scale, returned at full size."""
    full = ref.shape
    small = scaled_shape(full, scale.ratio)
    if small != full:
        ref_planes = [resize(p, small) for p in ref.planes()]
        dist_planes = [resize(p, small) for p in dist.planes()]
    else:
        ref_planes, dist_planes = list(ref.planes()), list(dist.planes())

    c = cfg.constants
    lit = cfg.literal_even_kernels
    maps = [similarity_map(log_response(ref_planes[0], scale, lit),
                           log_response(dist_planes[0], scale, lit), c.c1, c.c2)]
    if with_chroma:
        maps.append(similarity_map(ref_planes[1], dist_planes[1], c.c3, c.c4))
        maps.append(similarity_map(ref_planes[2], dist_planes[2], c.c5, c.c6))

    if cfg.clamp_negative_similarity:
        maps = [np.maximum(m, 0.0) for m in maps]
    if small != full:
        # bicubic overshoot would leave the similarity range
        maps = [np.clip(resize(m, full), -1.0, 1.0) for m in maps]
    return maps


def multiresolution_maps(ref, dist, cfg=PersimConfig(), with_chroma=True):
    """Per-channel geometric means across all configured scales.

    Returns ``[logsim_mr, asim_mr, bsim_mr]`` (only the first entry when
    ``with_chroma`` is false).
    """
    ref, dist = _prepare(ref, dist, cfg)
    per_scale = [_scale_maps(ref, dist, s, cfg, with_chroma) for s in cfg.scales]
    return [geometric_mean_maps(channel) for channel in zip(*per_scale)]


def persim_map(ref, dist, cfg=PersimConfig()):
    """Fused multi-resolution quality map before pooling."""
    logsim, asim, bsim = multiresolution_maps(ref, dist, cfg)
    return fuse_channels(logsim, asim, bsim, cfg.log_power, cfg.chroma_power)


def persim(ref, dist, cfg=PersimConfig()):
    """Multi-resolution PerSIM score of two :class:`~persim.color.LabImage`."""
    return MetricScore(pool_and_map(persim_map(ref, dist, cfg), cfg.pooling_power), "PerSIM")


def persim_single_resolution(ref, dist, cfg=PersimConfig()):
    """PerSIM at full resolution only, using the first scale's LoG settings."""
    ref, dist = _prepare(ref, dist, cfg)
    scale = cfg.scales[0]
    c = cfg.constants
    logsim = similarity_map(log_response(ref.L, scale, cfg.literal_even_kernels),
                            log_response(dist.L, scale, cfg.literal_even_kernels), c.c1, c.c2)
    asim, bsim = chroma_similarities(ref, dist, c)
    if cfg.clamp_negative_similarity:
        logsim, asim, bsim = (np.maximum(m, 0.0) for m in (logsim, asim, bsim))
    fused = fuse_channels(logsim, asim, bsim, cfg.log_power, cfg.chroma_power)
    return MetricScore(pool_and_map(fused, cfg.pooling_power), "PerSIM_SR")


def logsim_metric(ref, dist, cfg=PersimConfig()):
    """Lightness-only ablation: the LoG term alone replaces the fused map."""
    (logsim,) = multiresolution_maps(ref, dist, cfg, with_chroma=False)
    return MetricScore(pool_and_map(logsim ** cfg.log_power, cfg.pooling_power), "LogSIM")
