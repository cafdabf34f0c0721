"""Batch scoring of IQA databases and correlation reports."""

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import baselines, fusion
from .color import rgb_to_lab
from .config import PersimConfig
from .errors import DecodeError, DegenerateInputError, ParameterError, ShapeError
from .imageio import read_rgb
from .stats import LogisticFit, kendall, plcc_rmse_after_regression, spearman

log = logging.getLogger(__name__)

# CLI name -> reported metric id
METRICS = {
    "persim": "PerSIM",
    "persim_sr": "PerSIM_SR",
    "logsim": "LogSIM",
    "psnr": "PSNR",
    "rmse": "RMSE",
}
ALL = "All"


def metric_id(name):
    key = name.strip().lower().replace("-", "_")
    if key in METRICS:
        return METRICS[key]
    if name in METRICS.values():
        return name
    raise ParameterError(f"unknown metric {name!r}; choose from {', '.join(METRICS)}")


def compare_images(ref, dist, cfg=PersimConfig(), metrics=tuple(METRICS.values())):
    """Score one RGB image pair with each requested metric.

    Returns a ``{metric id: value}`` dict in the order requested.
    """
    ref = np.asarray(ref)
    dist = np.asarray(dist)
    if ref.shape != dist.shape:
        raise ShapeError(f"image shapes differ: {ref.shape} vs {dist.shape}")
    ids = [metric_id(m) for m in metrics]
    lab_ref = lab_dist = None
    if any(i in ("PerSIM", "PerSIM_SR", "LogSIM") for i in ids):
        lab_ref, lab_dist = rgb_to_lab(ref), rgb_to_lab(dist)
    out = {}
    for i in ids:
        if i == "PerSIM":
            out[i] = fusion.persim(lab_ref, lab_dist, cfg).value
        elif i == "PerSIM_SR":
            out[i] = fusion.persim_single_resolution(lab_ref, lab_dist, cfg).value
        elif i == "LogSIM":
            out[i] = fusion.logsim_metric(lab_ref, lab_dist, cfg).value
        elif i == "PSNR":
            out[i] = baselines.psnr(ref, dist)
        elif i == "RMSE":
            out[i] = baselines.rmse(ref, dist)
    return out


def _score_entry(args):
    entry, ids, cfg = args
    try:
        values = compare_images(read_rgb(entry.ref), read_rgb(entry.dist), cfg, ids)
    except (DecodeError, ShapeError, ParameterError) as exc:
        return None, str(exc)
    return values, None


@dataclass
class ReportRow:
    metric: str
    category: str
    n: int
    plcc: float = None
    rmse: float = None
    srocc: float = None
    kcc: float = None
    beta: list = None
    fit_converged: bool = None
    degenerate: str = None


@dataclass
class EvaluationReport:
    database: str
    convention: str
    fingerprint: str
    config: dict
    metrics: list
    logistic: str
    rows: list = field(default_factory=list)
    scores: list = field(default_factory=list)
    exclusions: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def row(self, metric, category=ALL):
        for r in self.rows:
            if r.metric == metric and r.category == category:
                return r
        raise KeyError((metric, category))

    def fit(self, metric, category=ALL):
        r = self.row(metric, category)
        if r.beta is None:
            return None
        return LogisticFit(tuple(r.beta), float("nan"), bool(r.fit_converged), 0, self.logistic)

    def to_csv(self):
        buf = io.StringIO()
        cols = ["metric", "category", "n", "plcc", "rmse", "srocc", "kcc",
                "b1", "b2", "b3", "b4", "b5", "degenerate"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.rows:
            beta = r.beta or [None] * 5
            w.writerow([r.metric, r.category, r.n, _fmt(r.plcc), _fmt(r.rmse), _fmt(r.srocc),
                        _fmt(r.kcc), *(_fmt(b) for b in beta), r.degenerate or ""])
        return buf.getvalue()

    def format_table(self):
        lines = [f"database: {self.database} ({self.convention}), "
                 f"config {self.fingerprint}, logistic {self.logistic}"]
        head = f"{'metric':<10} {'category':<12} {'n':>5} {'PLCC':>7} {'RMSE':>8} {'SROCC':>7} {'KCC':>7}"
        lines += [head, "-" * len(head)]
        for r in self.rows:
            lines.append(f"{r.metric:<10} {r.category:<12} {r.n:>5} {_num(r.plcc, 3):>7} "
                         f"{_num(r.rmse, 2):>8} {_num(r.srocc, 3):>7} {_num(r.kcc, 3):>7}"
                         + (f"  ({r.degenerate})" if r.degenerate else ""))
        if self.exclusions:
            lines.append(f"{len(self.exclusions)} pair(s) excluded:")
            lines += [f"  #{e['index']} {e['dist']}: {e['reason']}" for e in self.exclusions]
        return "\n".join(lines) + "\n"


def _fmt(v):
    return "" if v is None else repr(v)


def _num(v, digits):
    return "-" if v is None else f"{v:.{digits}f}"


def _row_stats(metric, category, x, y, higher_is_better, variant):
    row = ReportRow(metric, category, len(x))
    problems = []
    y_rank = y if higher_is_better else -y
    try:
        row.srocc = spearman(x, y_rank)
        row.kcc = kendall(x, y_rank)
    except DegenerateInputError as exc:
        problems.append(str(exc))
    try:
        row.plcc, row.rmse, fit = plcc_rmse_after_regression(x, y, variant)
        row.beta = list(fit.beta)
        row.fit_converged = fit.converged
    except DegenerateInputError as exc:
        problems.append(str(exc))
    if problems:
        row.degenerate = "; ".join(dict.fromkeys(problems))
    return row


def evaluate_database(manifest, metrics=("persim",), cfg=PersimConfig(), jobs=1,
                      logistic="standard", groups=None):
    """Score every manifest pair and correlate against subjective scores.

    Statistics are reported per category, per optional ``groups`` entry
    (``{name: [distortion labels]}``, for overlapping subsets), and over all
    pairs. SROCC/KCC use subjective scores negated for DMOS databases;
    PLCC/RMSE are taken after a logistic fit onto the raw scores.

    Pairs that fail to decode, differ in size or are too small are listed in
    ``exclusions`` rather than aborting the run.
    """
    ids = [metric_id(m) for m in metrics]
    if not ids:
        raise ParameterError("at least one metric is required")
    work = [(e, ids, cfg) for e in manifest.entries]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_score_entry, work, chunksize=1))
    else:
        results = [_score_entry(w) for w in work]

    report = EvaluationReport(manifest.database, manifest.convention, cfg.fingerprint(),
                              cfg.to_dict(), ids, logistic)
    for i, (entry, (values, err)) in enumerate(zip(manifest.entries, results)):
        if err is not None:
            report.exclusions.append({"index": i, "ref": entry.ref_name or str(entry.ref),
                                      "dist": entry.dist_name or str(entry.dist),
                                      "reason": err})
            log.warning("excluded pair %d (%s): %s", i, entry.dist_name, err)
            continue
        report.scores.append({"index": i, "ref": entry.ref_name or str(entry.ref),
                              "dist": entry.dist_name or str(entry.dist),
                              "score": entry.score, "distortion": entry.distortion,
                              "category": entry.category, "values": values})

    subsets = [(c, [s for s in report.scores if s["category"] == c])
               for c in sorted({s["category"] for s in report.scores})]
    for name, labels in sorted((groups or {}).items()):
        labels = set(labels)
        subsets.append((name, [s for s in report.scores if s["distortion"] in labels]))
    subsets.append((ALL, report.scores))

    for mid in ids:
        for name, subset in subsets:
            x = np.array([s["values"][mid] for s in subset], dtype=np.float64)
            y = np.array([s["score"] for s in subset], dtype=np.float64)
            report.rows.append(_row_stats(mid, name, x, y, manifest.higher_is_better, logistic))
    return report


def emit_scatter(report, path, metric="PerSIM", category=None):
    """Write ``objective,mapped,subjective,category`` rows for scatter plots.

    ``mapped`` applies the overall logistic fit of ``metric``; it is left
    empty when that fit is undefined. Returns the number of data rows.
    """
    mid = metric_id(metric)
    fit = report.fit(mid, ALL)
    rows = [s for s in report.scores if category is None or s["category"] == category]
    if not rows:
        log.warning("no pairs match category %r; writing header only", category)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["objective", "mapped", "subjective", "category"])
        for s in rows:
            x = s["values"][mid]
            mapped = "" if fit is None else repr(float(fit.predict(np.array([x]))[0]))
            w.writerow([repr(x), mapped, repr(s["score"]), s["category"]])
    return len(rows)

