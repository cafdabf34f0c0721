"""Build small on-disk IQA databases for harness and CLI tests."""

import numpy as np

from images import blur, texture_image
from persim.imageio import write_rgb
from persim.manifest import write_manifest

NOISE_LEVELS = tuple(2.0 * k for k in range(1, 21))


def noise_ladder_db(root, gray=False, name="synthetic.csv"):
    """One reference with 20 noise levels; MOS falls with the noise level."""
    root.mkdir(parents=True, exist_ok=True)
    ref = texture_image(21, 40, 48, smooth=1.2)
    if gray:
        ref = np.repeat(ref[..., :1], 3, axis=-1)
    z = np.random.default_rng(8).normal(size=ref.shape[:2] if gray else ref.shape)
    if gray:
        z = np.repeat(z[..., None], 3, axis=-1)
    write_rgb(root / "ref.png", np.round(ref))
    rows = []
    for k, sigma in enumerate(NOISE_LEVELS):
        dist = np.clip(np.round(ref + sigma * z), 0, 255)
        fname = f"dist_{k:02d}.png"
        write_rgb(root / fname, dist)
        category = "low" if k < 10 else "high"
        rows.append(("ref.png", fname, 100.0 - 4.0 * sigma, "awgn", category))
    path = root / name
    write_manifest(path, rows)
    return path


def identity_db(root, n=6):
    root.mkdir(parents=True, exist_ok=True)
    rows = []
    for k in range(n):
        write_rgb(root / f"img{k}.bmp", np.round(texture_image(30 + k, 24, 24)))
        rows.append((f"img{k}.bmp", f"img{k}.bmp", 50.0 + k, "none", "same"))
    path = root / "identity.csv"
    write_manifest(path, rows)
    return path


def mixed_db(root, name="mixed.csv"):
    """Three references with noise and blur ladders; MOS is noisy, not forced."""
    root.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(77)
    rows = []
    for r in range(3):
        ref = np.round(texture_image(50 + r, 40, 44, smooth=1.0 + r))
        write_rgb(root / f"ref{r}.png", ref)
        z = np.random.default_rng(100 + r).normal(size=ref.shape)
        for k, level in enumerate((3.0, 6.0, 12.0, 24.0, 48.0)):
            fname = f"r{r}_noise{k}.png"
            write_rgb(root / fname, np.clip(np.round(ref + level * z), 0, 255))
            rows.append((f"ref{r}.png", fname, 90 - 15 * k + rng.normal(0, 8), "awgn", "noise"))
        for k, radius in enumerate((0.5, 1.0, 2.0, 3.0, 4.0)):
            fname = f"r{r}_blur{k}.png"
            write_rgb(root / fname, np.clip(np.round(blur(ref, radius)), 0, 255))
            rows.append((f"ref{r}.png", fname, 85 - 14 * k + rng.normal(0, 8), "gblur", "blur"))
    path = root / name
    write_manifest(path, rows)
    return path
