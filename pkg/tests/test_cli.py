import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from dbfactory import noise_ladder_db
from images import blur
from persim.cli import main
from persim.config import PersimConfig
from persim.imageio import write_rgb

FIVE = {"PerSIM", "PerSIM_SR", "LogSIM", "PSNR", "RMSE"}


@pytest.fixture
def pair(tmp_path, photo):
    ref, dist = tmp_path / "ref.png", tmp_path / "blur.png"
    write_rgb(ref, np.round(photo))
    write_rgb(dist, np.clip(np.round(blur(photo, 2.0)), 0, 255))
    return ref, dist


@pytest.fixture(scope="module")
def db(tmp_path_factory):
    return noise_ladder_db(tmp_path_factory.mktemp("db"))


def _scores(out):
    return {k: float(v) for k, v in (line.split("\t") for line in out.strip().splitlines())}


def test_compare_same_file(pair, capsys):
    ref, _ = pair
    assert main(["compare", str(ref), str(ref)]) == 0
    s = _scores(capsys.readouterr().out)
    assert set(s) == FIVE
    assert s["PerSIM"] == pytest.approx(1.0, abs=1e-9)
    assert s["RMSE"] == 0.0 and s["PSNR"] == 100.0


def test_compare_blurred(pair, capsys):
    assert main(["compare", *map(str, pair)]) == 0
    s = _scores(capsys.readouterr().out)
    assert s["PerSIM"] < 1.0
    assert np.isfinite(s["PSNR"]) and s["PSNR"] < 100.0


def test_compare_json(pair, capsys):
    assert main(["compare", *map(str, pair), "--json"]) == 0
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) == 1
    record = json.loads(out)
    assert FIVE <= set(record)
    assert record["config_fingerprint"] == PersimConfig().fingerprint()


def test_compare_config_changes_fingerprint(pair, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"pooling_power": 1.0}))
    assert main(["compare", *map(str, pair), "--json", "--config", str(cfg)]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["config_fingerprint"] == PersimConfig(pooling_power=1.0).fingerprint()
    assert record["config_fingerprint"] != PersimConfig().fingerprint()


def test_compare_dimension_mismatch(pair, tmp_path, capsys):
    small = tmp_path / "small.png"
    write_rgb(small, np.zeros((20, 20, 3)))
    assert main(["compare", str(pair[0]), str(small)]) == 2
    assert "sizes differ" in capsys.readouterr().err


def test_compare_unreadable(pair, tmp_path, capsys):
    junk = tmp_path / "junk.png"
    junk.write_bytes(b"not an image")
    assert main(["compare", str(pair[0]), str(junk)]) == 2
    assert main(["compare", str(pair[0]), str(tmp_path / "missing.png")]) == 2
    assert "error" in capsys.readouterr().err


def test_usage_errors(db, tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compare", "only-one"])
    assert exc.value.code == 1
    assert main(["evaluate", "--manifest", str(db), "--metrics", "ssim"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"no_such_field": 1}))
    assert main(["evaluate", "--manifest", str(db), "--config", str(bad)]) == 1
    capsys.readouterr()


def test_bad_manifest_is_io_error(tmp_path, capsys):
    m = tmp_path / "m.csv"
    m.write_text("ref,dist,score,distortion,category\na.png,b.png,x,n,c\n")
    assert main(["evaluate", "--manifest", str(m)]) == 2
    err = capsys.readouterr().err
    assert "row 2" in err and "score" in err


def test_evaluate_outputs(db, tmp_path, capsys):
    out, scatter = tmp_path / "r.json", tmp_path / "s.csv"
    code = main(["evaluate", "--manifest", str(db), "--metrics", "persim,logsim,psnr",
                 "--out", str(out), "--scatter", str(scatter)])
    assert code == 0
    table = capsys.readouterr().out
    assert "PerSIM" in table and "All" in table
    report = json.loads(out.read_text())
    assert report["metrics"] == ["PerSIM", "LogSIM", "PSNR"]
    assert len(report["scores"]) == 20 and report["exclusions"] == []
    with open(scatter, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["objective", "mapped", "subjective", "category"]
    assert len(rows) == 21


def test_evaluate_json_and_csv(db, capsys):
    assert main(["evaluate", "--manifest", str(db), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["convention"] == "MOS"
    assert main(["evaluate", "--manifest", str(db), "--csv", "--dmos"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [r["category"] for r in rows] == ["high", "low", "All"]
    assert float(rows[-1]["srocc"]) == -1.0


def test_evaluate_json_is_byte_identical(db, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert main(["evaluate", "--manifest", str(db), "--metrics", "persim,logsim",
                     "--out", str(path), "--jobs", str(k + 1)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_convert_bad_layout(tmp_path, capsys):
    (tmp_path / "dmos.mat").write_bytes(b"garbage")
    assert main(["convert-live", str(tmp_path), str(tmp_path / "o.csv")]) == 2
    assert main(["convert-tid2013", str(tmp_path), str(tmp_path / "o.csv")]) == 2
    assert "not a readable MAT file" in capsys.readouterr().err


def test_module_entry_point(pair):
    proc = subprocess.run([sys.executable, "-m", "persim", "compare", *map(str, pair), "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["PerSIM"] < 1.0
