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

import csv
from pathlib import Path

import numpy as np
import pytest

from baton.exceptions import BatonContractViolation, BatonSampleFileError
from baton.output import (
    Diagnostics,
    diagnose,
    emit_plot_data,
    histogram_1d,
    histogram_2d,
    smallest_interval_levels,
    summarize,
    write_table,
)
from baton.samples import SampleBatch

from .conftest import iid_batch

_COLUMNS = ("mean", "median", "std", "q16", "q50", "q84", "ess", "R-hat")


def _two_chains() -> SampleBatch:
    return SampleBatch(
        np.array([1.0, 2.0, 3.0, 4.0, 2.0, 3.0, 4.0, 5.0])[:, None],
        np.ones(8),
        np.zeros(8),
        np.array([0, 0, 0, 0, 1, 1, 1, 1]),
        np.array([0, 1, 2, 3, 0, 1, 2, 3]),
        ["x"],
    )


def _row(name: str, *values: str) -> str:
    return name.ljust(12) + "".join(v.rjust(11) for v in values)


def _read(path: Path) -> list[list[str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_summary_text() -> None:
    diagnostics = Diagnostics(
        np.array([6.0]), np.array([1.05]), 1.05, 1.1, np.array([3.0]), 2
    )
    assert summarize(_two_chains(), diagnostics).splitlines() == [
        "baton sampling summary",
        "chains: 2  samples: 8  total weight: 8  burn-in cycles: 2",
        _row("parameter", *_COLUMNS),
        _row("x", "3", "3", "1.3093", "2", "3", "4", "6", "1.05"),
        "global mode: [3]",
        "convergence: converged (max R-hat 1.05, R-hat_p 1.05 <= 1.1)",
    ]


def test_summary_warns_when_not_converged() -> None:
    diagnostics = Diagnostics(np.array([6.0]), np.array([1.3]), 1.4, 1.1)
    text = summarize(_two_chains(), diagnostics)
    assert diagnostics.converged is False
    assert text.endswith(
        "WARNING: chains have not converged (max R-hat 1.3, R-hat_p 1.4, threshold 1.1)\n"
    )
    assert "burn-in cycles: -" in text


def test_summary_without_convergence_test() -> None:
    batch = iid_batch(np.arange(10.0)[:, None])
    diagnostics = diagnose(batch)
    assert diagnostics.psrf is None and diagnostics.converged is None
    lines = summarize(batch, diagnostics).splitlines()
    assert lines[3].endswith("-".rjust(11))
    assert lines[-1] == "convergence: not tested (fewer than 2 chains)"


def test_diagnose_two_chains() -> None:
    diagnostics = diagnose(_two_chains(), cycles_used=3)
    assert diagnostics.psrf is not None and diagnostics.psrf.shape == (1,)
    assert diagnostics.mpsrf is not None
    np.testing.assert_array_equal(diagnostics.mode, [1.0])
    assert diagnostics.to_mapping()["cycles_used"] == 3


def test_histogram_1d_has_unit_area(rng) -> None:
    batch = iid_batch(rng.generator.standard_normal((5_000, 2)))
    centres, density, edges = histogram_1d(batch, 1)
    assert centres.shape == density.shape == (edges.shape[0] - 1,)
    assert float(np.sum(density * np.diff(edges))) == pytest.approx(1.0)


def test_histogram_2d_has_unit_area(rng) -> None:
    batch = iid_batch(rng.generator.standard_normal((5_000, 2)))
    xc, yc, density = histogram_2d(batch, 0, 1, n_bins=(12, 9))
    assert density.shape == (12, 9)
    area = (xc[1] - xc[0]) * (yc[1] - yc[0])
    assert float(np.sum(density) * area) == pytest.approx(1.0)


def test_smallest_interval_levels() -> None:
    assert smallest_interval_levels(np.array([0.05, 0.3, 0.5, 0.15])) == [
        "0.955",
        "0.683",
        "0.683",
        "0.955",
    ]
    assert smallest_interval_levels(np.array([0.7, 0.299, 0.001])) == [
        "0.683",
        "0.955",
        "none",
    ]
    with pytest.raises(BatonContractViolation):
        smallest_interval_levels(np.zeros(4))


def test_plot_data_1d_with_prior(tmp_path: Path, rng) -> None:
    batch = iid_batch(rng.generator.random((2_000, 1)))
    path = emit_plot_data(
        batch, (0,), tmp_path / "m.csv", n_bins=10, prior_log_pdf=lambda x: 0.0 * x
    )
    rows = _read(path)
    assert rows[0] == ["bin_center", "density", "prior_density"]
    assert len(rows) == 11
    assert all(float(r[2]) == 1.0 for r in rows[1:])


def test_plot_data_2d(tmp_path: Path, rng) -> None:
    batch = iid_batch(rng.generator.standard_normal((3_000, 3)))
    rows = _read(emit_plot_data(batch, (0, 2), tmp_path / "p.csv", n_bins=8))
    assert rows[0] == ["bin_x", "bin_y", "density", "level"]
    assert len(rows) == 1 + 64
    assert {r[3] for r in rows[1:]} <= {"0.683", "0.955", "0.997", "none"}
    assert any(r[3] == "0.683" for r in rows[1:])


def test_plot_data_rejects_three_dims(tmp_path: Path, rng) -> None:
    batch = iid_batch(rng.generator.standard_normal((100, 3)))
    with pytest.raises(BatonContractViolation):
        emit_plot_data(batch, (0, 1, 2), tmp_path / "x.csv")


def test_write_table_into_missing_directory(tmp_path: Path) -> None:
    with pytest.raises(BatonSampleFileError):
        write_table(tmp_path / "absent" / "t.csv", ["a"], [[1.0]])
