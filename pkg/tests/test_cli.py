# MIT License

# Copyright (c) 2023 ayvi-0001

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.

# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
from __future__ import annotations

import json
from pathlib import Path

import pytest

from baton.cli import EXIT_OK, EXIT_USAGE, main


def test_defaults(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["defaults", "sample"]) == EXIT_OK
    printed = json.loads(capsys.readouterr().out)
    assert printed["sampler"] == "mh"
    assert printed["burnin"]["n_chains"] == 4


def test_unknown_subcommand() -> None:
    with pytest.raises(SystemExit) as exc:
        main(["explode"])
    assert exc.value.code == EXIT_USAGE


def test_sample_needs_a_model(tmp_path: Path) -> None:
    assert main(["sample", "--out", str(tmp_path)]) == EXIT_USAGE


def test_invalid_config_file(tmp_path: Path) -> None:
    config = tmp_path / "config.json"
    config.write_text("{not json", encoding="utf-8")
    args = ["sample", "--model", "normal", "--config", str(config)]
    args += ["--out", str(tmp_path)]
    assert main(args) == EXIT_USAGE


def test_unknown_config_key(tmp_path: Path) -> None:
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"burnin": {"chains": 3}}), encoding="utf-8")
    args = ["sample", "--model", "normal", "--config", str(config)]
    args += ["--out", str(tmp_path)]
    assert main(args) == EXIT_USAGE


def test_missing_sample_file(tmp_path: Path) -> None:
    assert main(["diagnose", "--in", str(tmp_path / "absent.csv")]) == 1


def test_sample_diagnose_integrate(tmp_path: Path) -> None:
    run = tmp_path / "run"
    args = ["sample", "--model", "normal", "--dims", "2", "--samples", "1000"]
    assert main([*args, "--seed", "3", "--out", str(run)]) == EXIT_OK
    for name in ("samples.csv", "summary.txt", "report.json", "manifest.json"):
        assert (run / name).is_file()
    assert (run / "summary.txt").read_text().startswith("baton sampling summary")

    plots = tmp_path / "plots"
    samples = str(run / "samples.csv")
    diagnose = ["diagnose", "--in", samples, "--plot", "1", "--plot", "1,2"]
    assert main([*diagnose, "--out", str(plots)]) == EXIT_OK
    assert (plots / "plot_1.csv").is_file()
    assert (plots / "plot_1_2.csv").is_file()

    evidence = tmp_path / "evidence" / "ahmi.json"
    integrate = ["integrate", "--in", samples, "--model", "normal", "--dims", "2"]
    assert main([*integrate, "--out", str(evidence)]) == EXIT_OK
    z = json.loads(evidence.read_text())["evidence"]["Z"]
    assert z == pytest.approx(1.0, rel=0.15)


def test_integrate_mc(tmp_path: Path) -> None:
    out = tmp_path / "mc.json"
    args = ["integrate", "--method", "mc", "--model", "normal", "--dims", "2"]
    assert main([*args, "--n", "50000", "--stratified", "--out", str(out)]) == EXIT_OK
    result = json.loads(out.read_text())["evidence"]
    assert result["method"] == "mc_stratified"
    assert result["Z"] == pytest.approx(1.0, rel=0.05)
    assert (tmp_path / "manifest.json").is_file()


def test_sample_is_reproducible(tmp_path: Path) -> None:
    args = ["sample", "--model", "funnel", "--dims", "2", "--samples", "300"]
    assert main([*args, "--seed", "5", "--out", str(tmp_path / "a")]) == EXIT_OK
    assert main([*args, "--seed", "5", "--out", str(tmp_path / "b")]) == EXIT_OK
    for name in ("samples.csv", "report.json"):
        first = (tmp_path / "a" / name).read_bytes()
        assert first == (tmp_path / "b" / name).read_bytes()


def test_sample_to_named_file_with_hmc_flags(tmp_path: Path) -> None:
    out = tmp_path / "run" / "normal.csv"
    args = ["sample", "--model", "normal", "--dims", "2", "--sampler", "hmc"]
    args += ["--samples", "300", "--leapfrog-steps", "8", "--target-accept", "0.7"]
    args += ["--grad", "fd", "--seed", "2", "--out", str(out)]
    assert main(args) == EXIT_OK
    assert out.is_file()
    assert (tmp_path / "run" / "normal.summary.txt").is_file()
    assert (tmp_path / "run" / "manifest.json").is_file()
    report = json.loads((tmp_path / "run" / "normal.report.json").read_text())
    hmc = report["config"]["hmc"]
    assert (hmc["n_leapfrog"], hmc["target_accept"], hmc["gradient"]) == (8, 0.7, "fd")


def test_bad_gradient_flag_is_a_usage_error(tmp_path: Path) -> None:
    with pytest.raises(SystemExit) as exc:
        main(["sample", "--model", "normal", "--grad", "exact", "--out", str(tmp_path)])
    assert exc.value.code == EXIT_USAGE


def test_diagnose_writes_report_json(tmp_path: Path) -> None:
    samples = tmp_path / "samples.csv"
    args = ["sample", "--model", "normal", "--dims", "2", "--samples", "1000"]
    assert main([*args, "--seed", "4", "--out", str(samples)]) == EXIT_OK

    report_path = tmp_path / "diag" / "report.json"
    assert main(["diagnose", "--in", str(samples), "--out", str(report_path)]) == EXIT_OK
    report = json.loads(report_path.read_text())
    assert {"psrf", "mpsrf", "ess", "converged", "estimates"} <= set(report)
    assert len(report["psrf"]) == len(report["ess"]) == 2
    assert report["converged"] is True
    assert report["mpsrf"] < 1.1
    estimates = list(report["estimates"].values())
    assert [round(e["mean"]) for e in estimates] == [15, 10]
    assert set(estimates[0]["quantiles"]) == {"0.16", "0.5", "0.84"}
    assert (tmp_path / "diag" / "summary.txt").is_file()
