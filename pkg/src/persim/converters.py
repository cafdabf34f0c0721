"""Build manifests from the native LIVE (release 2) and TID2013 layouts.

LIVE layout expected under ``root``::

    jp2k/ jpeg/ wn/ gblur/ fastfading/   imgN.bmp, numbered from 1
    refimgs/                             reference bitmaps
    dmos.mat                             'dmos' and 'orgs', 982 entries
    refnames_all.mat                     'refnames_all', 982 names

Entries flagged in ``orgs`` are undistorted copies and are dropped, leaving
779 pairs. TID2013 layout::

    mos_with_names.txt                   "<mos> <distorted name>" per line
    reference_images/I01.BMP ...
    distorted_images/i01_01_1.bmp ...

TID2013 rows get the two-digit distortion code as both ``distortion`` and
``category``; overlapping subsets are evaluated through ``groups``.
"""

import os
from pathlib import Path

import numpy as np
from scipy.io import loadmat
from scipy.io.matlab import MatReadError

from .errors import DecodeError
from .manifest import write_manifest

LIVE_FOLDERS = (
    ("jp2k", "Jp2k", 227),
    ("jpeg", "Jpeg", 233),
    ("wn", "Wn", 174),
    ("gblur", "Gblur", 174),
    ("fastfading", "FF", 174),
)


def _rel(p, start):
    return Path(os.path.relpath(p, start)).as_posix()


def _find_ci(folder, name):
    """Case-insensitive lookup of ``name`` inside ``folder``."""
    p = folder / name
    if p.exists():
        return p
    lowered = name.lower()
    for child in folder.iterdir():
        if child.name.lower() == lowered:
            return child
    raise FileNotFoundError(f"{name} not found in {folder}")


def _loadmat(path):
    try:
        return loadmat(path)
    except (MatReadError, ValueError) as exc:
        raise DecodeError(f"{path}: not a readable MAT file: {exc}") from exc


def convert_live(root, out, dmos_file="dmos.mat"):
    """Write a manifest for a LIVE release 2 tree; returns the row count."""
    root, out = Path(root), Path(out)
    mat = _loadmat(root / dmos_file)
    dmos_key = "dmos_new" if "dmos_new" in mat else "dmos"
    dmos = np.ravel(mat[dmos_key])
    orgs = np.ravel(mat["orgs"])
    names = [str(np.ravel(n)[0]) for n in np.ravel(_loadmat(root / "refnames_all.mat")["refnames_all"])]
    total = sum(count for _, _, count in LIVE_FOLDERS)
    if not (len(dmos) == len(orgs) == len(names) == total):
        raise ValueError(f"expected {total} LIVE entries, got dmos={len(dmos)}, "
                         f"orgs={len(orgs)}, refnames={len(names)}")
    rows = []
    k = 0
    for folder, category, count in LIVE_FOLDERS:
        for i in range(1, count + 1):
            if not orgs[k]:
                rows.append((_rel(root / "refimgs" / names[k], out.parent),
                             _rel(root / folder / f"img{i}.bmp", out.parent),
                             float(dmos[k]), folder, category))
            k += 1
    write_manifest(out, rows)
    return len(rows)


def convert_tid2013(root, out, mos_file="mos_with_names.txt"):
    """Write a manifest for a TID2013 tree; returns the row count."""
    root, out = Path(root), Path(out)
    refs, dists = root / "reference_images", root / "distorted_images"
    rows = []
    with open(root / mos_file, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            mos, name = float(parts[0]), parts[1]
            stem = Path(name).stem  # i01_01_1
            ref_id, code, _level = stem.split("_")
            ref = _find_ci(refs, f"I{ref_id[1:]}.BMP")
            rows.append((_rel(ref, out.parent), _rel(_find_ci(dists, name), out.parent),
                         mos, code, code))
    write_manifest(out, rows)
    return len(rows)
