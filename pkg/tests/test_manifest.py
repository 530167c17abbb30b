from __future__ import annotations

import json

import pandas as pd

from bermancodes.manifest import RunManifest, record_run, sidecar_path, write_with_manifest


def test_stable_view_drops_timestamp():
    manifest = RunManifest("info", {"n": 3}).stamped()
    assert manifest.timestamp
    assert "timestamp" not in manifest.stable()
    assert RunManifest("info", {"n": 3}).stable() == manifest.stable()


def test_write_with_manifest(tmp_path):
    out = tmp_path / "a" / "result.csv"
    write_with_manifest("x\n1\n", out, RunManifest("simulate", {"trials": 10}, seed=4))
    assert out.read_text() == "x\n1\n"
    sidecar = json.loads(sidecar_path(out).read_text())
    assert sidecar["params"] == {"trials": 10}
    assert sidecar["seed"] == 4


def test_record_run_appends(tmp_path):
    path = tmp_path / "runs.csv"
    record_run(RunManifest("rate", {"n": 3}), path)
    record_run(RunManifest("info", {"n": 5}), path)
    frame = pd.read_csv(path)
    assert frame["command"].tolist() == ["rate", "info"]
    assert json.loads(frame["params"][1]) == {"n": 5}
