"""Tunable constants for the metric and their JSON representation."""

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field

from .color import LAB_ENCODINGS
from .errors import ConfigError, ParameterError
from .log_features import ScaleParams
from .similarity import SimilarityConstants

DEFAULT_SCALES = (
    ScaleParams(1.0, 10.0, 13),
    ScaleParams(0.6, 8.0, 4),
    ScaleParams(0.4, 7.0, 2),
)

RESAMPLE_METHODS = ("bicubic",)


@dataclass(frozen=True)
class PersimConfig:
    """All knobs of the PerSIM pipeline.

    ``scales`` keep the tabulated kernel sizes; even sizes are widened to
    the next odd size at use unless ``literal_even_kernels`` is set.
    """

    scales: tuple = DEFAULT_SCALES
    log_power: float = 4.0
    chroma_power: float = 2.0
    pooling_power: float = 25.0
    constants: SimilarityConstants = field(default_factory=SimilarityConstants)
    resample: str = "bicubic"
    clamp_negative_similarity: bool = False
    literal_even_kernels: bool = False
    lab_encoding: str = "cie"

    def __post_init__(self):
        object.__setattr__(self, "scales", tuple(self.scales))
        if not self.scales:
            raise ParameterError("at least one scale is required")
        ratios = [s.ratio for s in self.scales]
        if any(b >= a for a, b in zip(ratios, ratios[1:])):
            raise ParameterError(f"scale ratios must be strictly descending, got {ratios}")
        if self.log_power <= 0 or self.chroma_power <= 0:
            raise ParameterError("fusion powers must be positive")
        if self.pooling_power < 1:
            raise ParameterError(f"pooling power must be >= 1, got {self.pooling_power}")
        if self.resample not in RESAMPLE_METHODS:
            raise ParameterError(f"unsupported resample method {self.resample!r}")
        if self.lab_encoding not in LAB_ENCODINGS:
            raise ParameterError(f"unsupported Lab encoding {self.lab_encoding!r}")

    def kernel_sizes(self):
        return [s.effective_size(self.literal_even_kernels) for s in self.scales]

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["scales"] = [dataclasses.asdict(s) for s in self.scales]
        return d

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        try:
            if "scales" in data:
                data["scales"] = tuple(ScaleParams(**s) for s in data["scales"])
            if "constants" in data:
                data["constants"] = SimilarityConstants(**data["constants"])
            return cls(**data)
        except (TypeError, ParameterError) as exc:
            raise ConfigError(str(exc)) from exc

    def fingerprint(self):
        """Short stable hash identifying this configuration."""
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def load_config(path):
    """Read a JSON config document; absent keys keep their defaults."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return PersimConfig.from_dict(data)
