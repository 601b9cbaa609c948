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

import numpy as np
import pytest

from baton.densities import make_test_density
from baton.exceptions import BatonConfigError
from baton.samples import SampleBatch
from baton.testsuite import EVIDENCE_MAX_DIMS, SuiteConfig, TestSuite, run_testsuite
from baton.testsuite.suite import CaseRecord


def _small(**overrides: object) -> SuiteConfig:
    settings: dict[str, object] = {
        "targets": ("normal",),
        "dims_list": (1,),
        "n_chains": 4,
        "n_samples": 2_000,
        "n_iid": 2_000,
        "seed": 11,
    }
    settings.update(overrides)
    return SuiteConfig.from_mapping(settings)


def test_config_validation() -> None:
    with pytest.raises(BatonConfigError):
        SuiteConfig(targets=("banana",))
    with pytest.raises(BatonConfigError):
        SuiteConfig(dims_list=(0,))
    with pytest.raises(BatonConfigError):
        SuiteConfig.from_mapping({"n_draws": 10})


def test_funnel_needs_two_dims() -> None:
    cfg = SuiteConfig(targets=("normal", "funnel"), dims_list=(1, 2))
    assert cfg.cases() == [("normal", 1), ("normal", 2), ("funnel", 2)]


def test_small_run_fills_the_record() -> None:
    report = run_testsuite(_small())
    assert len(report.records) == 1
    record = report.records[0]
    assert record.error is None
    assert record.attempts >= 1
    assert len(record.ks_pvalues) == 1
    assert "0" in record.pull_stats
    assert record.ess is not None and record.ess[0] > 0
    assert record.Z_est is not None or record.evidence_skip is not None
    assert record.mean_est is not None
    assert abs(float(record.mean_est[0]) - 15.0) < 0.5


def test_report_is_deterministic() -> None:
    first = run_testsuite(_small(), threads=1).to_json()
    second = run_testsuite(_small(), threads=2).to_json()
    assert first == second
    loaded = json.loads(first)
    assert loaded["seed"] == 11
    assert loaded["records"][0]["target_name"] == "normal"


def test_evidence_skipped_above_the_limit() -> None:
    limit = EVIDENCE_MAX_DIMS["multi_cauchy"]
    dims = limit + 1
    record = CaseRecord("multi_cauchy", dims, 0, {})
    suite = TestSuite(_small())
    density = make_test_density("multi_cauchy", dims)
    suite._evidence(record, SampleBatch.empty(dims), density)
    assert record.Z_est is None
    assert record.evidence_skip is not None and str(limit) in record.evidence_skip
    assert record.passed


def test_failed_gates_are_recorded() -> None:
    record = CaseRecord("normal", 1, 0, {})
    record.mode_true, record.mode_est = np.array([15.0]), np.array([16.5])
    record.mean_true, record.mean_est = np.array([15.0]), np.array([15.1])
    record.var_true, record.var_est = np.array([2.25]), np.array([3.0])
    TestSuite(_small())._check(record)
    assert record.failures == ["mode outside tolerance", "variance outside tolerance"]
    assert not record.passed
