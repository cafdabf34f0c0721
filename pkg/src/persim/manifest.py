"""IQA database manifests.

A manifest is a UTF-8 CSV with header ``ref,dist,score,distortion,category``.
Image paths are resolved relative to the manifest file.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ManifestError

COLUMNS = ("ref", "dist", "score", "distortion", "category")
CONVENTIONS = ("MOS", "DMOS")


@dataclass(frozen=True)
class Entry:
    ref: Path
    dist: Path
    score: float
    distortion: str
    category: str
    ref_name: str = ""
    dist_name: str = ""


@dataclass(frozen=True)
class DatabaseManifest:
    entries: tuple
    database: str
    convention: str = "MOS"

    def __len__(self):
        return len(self.entries)

    def categories(self):
        return sorted({e.category for e in self.entries})

    @property
    def higher_is_better(self):
        return self.convention == "MOS"


def load_manifest(path, database=None, convention="MOS", check_files=True):
    """Parse and validate a manifest CSV.

    Parameters
    ----------
    path : str or Path
      CSV file.
    database : str, optional
      Identifier stored in reports; defaults to the file stem.
    convention : {'MOS', 'DMOS'}
      Whether higher subjective scores mean better ('MOS') or worse quality.
    check_files : bool
      Require every referenced image to exist.

    Raises
    ------
    ManifestError
      Listing every malformed row, dangling path and duplicate pair.
    """
    path = Path(path)
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    if not path.is_file():
        raise ManifestError(path, [f"file not found: {path}"])
    base = path.parent
    problems = []
    entries = []
    seen = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in COLUMNS if c not in header]
        if missing:
            raise ManifestError(path, [f"header is missing column(s): {', '.join(missing)}"])
        # row 1 is the header
        for rowno, row in enumerate(reader, start=2):
            bad = False
            for col in COLUMNS:
                if row.get(col) is None or not row[col].strip():
                    problems.append(f"row {rowno}, column '{col}': empty value")
                    bad = True
            if bad:
                continue
            try:
                score = float(row["score"])
                if not math.isfinite(score):
                    raise ValueError
            except ValueError:
                problems.append(f"row {rowno}, column 'score': not a number: {row['score']!r}")
                continue
            ref = (base / row["ref"].strip()).resolve()
            dist = (base / row["dist"].strip()).resolve()
            if check_files:
                for col, p in (("ref", ref), ("dist", dist)):
                    if not p.is_file():
                        problems.append(f"row {rowno}, column '{col}': no such file: {p}")
                        bad = True
            if (ref, dist) in seen:
                problems.append(f"row {rowno}: duplicate pair ({row['ref']}, {row['dist']})")
                bad = True
            seen.add((ref, dist))
            if not bad:
                entries.append(Entry(ref, dist, score, row["distortion"].strip(),
                                     row["category"].strip(), row["ref"].strip(),
                                     row["dist"].strip()))
    if problems:
        raise ManifestError(path, problems)
    return DatabaseManifest(tuple(entries), database or path.stem, convention)


def write_manifest(path, rows):
    """Write ``(ref, dist, score, distortion, category)`` tuples as a manifest."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for ref, dist, score, distortion, category in rows:
            w.writerow([ref, dist, repr(float(score)), distortion, category])
