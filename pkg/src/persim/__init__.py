"""PerSIM: full-reference image quality from LoG features and CIELAB chroma
similarity, fused across three resolutions.

Typical use::

    from persim import rgb_to_lab, persim
    score = persim(rgb_to_lab(ref_rgb), rgb_to_lab(dist_rgb)).value
"""

from .baselines import PsnrParams, psnr, rmse
from .color import LabImage, rgb_to_lab, srgb_to_linear
from .config import PersimConfig, load_config
from .errors import (ConfigError, DecodeError, DegenerateInputError, ManifestError,
                     ParameterError, PersimError, ShapeError)
from .fusion import (MetricScore, fuse_channels, geometric_mean_maps, logsim_metric,
                     persim, persim_map, persim_single_resolution, pool_and_map)
from .harness import EvaluationReport, compare_images, emit_scatter, evaluate_database
from .log_features import LogKernel, ScaleParams, convolve, log_response, make_log_kernel
from .manifest import DatabaseManifest, load_manifest
from .similarity import SimilarityConstants, chroma_similarities, similarity_map
from .stats import (LogisticFit, fit_logistic, kendall, pearson,
                    plcc_rmse_after_regression, spearman)

__version__ = "0.1.0"
