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
import os
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.api.client import _BLOG
from baton.diagnostics.estimates import bin_count, weighted_histogram
from baton.exceptions import BatonContractViolation, BatonSampleFileError
from baton.properties.options import BinningRule
from baton.samples import SampleBatch
from baton.samples.csvio import fmt_float

__all__: Sequence[str] = (
    "DEFAULT_LEVELS",
    "MAX_BINS_2D",
    "histogram_1d",
    "histogram_2d",
    "smallest_interval_levels",
    "level_tag",
    "emit_plot_data",
    "write_table",
)

FloatArray = npt.NDArray[np.float64]
LogPdf = Callable[[FloatArray], FloatArray]

DEFAULT_LEVELS: tuple[float, ...] = (0.683, 0.955, 0.997)
MAX_BINS_2D = 200
OUTSIDE = "none"


def level_tag(level: float) -> str:
    return f"{level:g}"


def write_table(
    path: str | os.PathLike[str], header: Sequence[str], columns: Sequence[Sequence[object]]
) -> Path:
    """Write equal-length columns as CSV; floats are written with 17 significant digits."""
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in zip(*columns):
                writer.writerow(
                    [fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in row]
                )
    except OSError as e:
        raise BatonSampleFileError(f"{path}: cannot write table ({e}).") from e
    _BLOG.debug("wrote %s", path)
    return path


def histogram_1d(
    batch: SampleBatch,
    k: int,
    *,
    rule: BinningRule | str = BinningRule.freedman_diaconis,
    n_bins: Optional[int] = None,
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """(bin centres, density normalized to unit area, edges) of dimension `k`."""
    if not 0 <= k < batch.dims:
        raise BatonContractViolation(f"Dimension {k} out of range for {batch.dims} dims.")
    counts, edges = weighted_histogram(batch.variates[:, k], batch.weights, rule, n_bins)
    widths = np.diff(edges)
    density: FloatArray = counts / (np.sum(counts) * widths)
    return 0.5 * (edges[:-1] + edges[1:]), density, edges


def histogram_2d(
    batch: SampleBatch,
    k: int,
    l: int,
    *,
    rule: BinningRule | str = BinningRule.freedman_diaconis,
    n_bins: Optional[tuple[int, int]] = None,
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """(x centres, y centres, density[x, y]) of dimensions `k` and `l`."""
    for j in (k, l):
        if not 0 <= j < batch.dims:
            raise BatonContractViolation(f"Dimension {j} out of range for {batch.dims} dims.")
    x, y, w = batch.variates[:, k], batch.variates[:, l], batch.weights
    if n_bins is None:
        n_bins = (
            min(MAX_BINS_2D, bin_count(x, rule, w)),
            min(MAX_BINS_2D, bin_count(y, rule, w)),
        )
    counts, x_edges, y_edges = np.histogram2d(x, y, bins=n_bins, weights=w)
    area = np.outer(np.diff(x_edges), np.diff(y_edges))
    density: FloatArray = counts / (np.sum(counts) * area)
    return (
        0.5 * (x_edges[:-1] + x_edges[1:]),
        0.5 * (y_edges[:-1] + y_edges[1:]),
        density,
    )


def smallest_interval_levels(
    mass: FloatArray, levels: Sequence[float] = DEFAULT_LEVELS
) -> list[str]:
    """
    Tag each bin with the smallest probability level whose smallest region holds it.

    Bins are added to a region in order of decreasing `mass` until the region holds
    `level` of the total; a bin gets the tag of the first (smallest) level that takes it,
    or "none". Equal masses keep their original order.
    """
    flat = np.asarray(mass, dtype=np.float64).ravel()
    total = float(np.sum(flat))
    if total <= 0:
        raise BatonContractViolation("Level tagging needs positive total mass.")
    order = np.argsort(-flat, kind="stable")
    before = np.concatenate([[0.0], np.cumsum(flat[order])[:-1]]) / total
    tags = [OUTSIDE] * flat.shape[0]
    for level in sorted(levels, reverse=True):
        for i in order[before < level]:
            tags[i] = level_tag(level)
    return tags


def emit_plot_data(
    batch: SampleBatch,
    dims: Sequence[int],
    path: str | os.PathLike[str],
    *,
    levels: Sequence[float] = DEFAULT_LEVELS,
    rule: BinningRule | str = BinningRule.freedman_diaconis,
    n_bins: Optional[int] = None,
    prior_log_pdf: Optional[LogPdf] = None,
) -> Path:
    """
    Histogram data for plotting.

    One dimension `(k,)` gives `bin_center,density` (plus `prior_density` when
    `prior_log_pdf` is given). Two dimensions `(k, l)` give
    `bin_x,bin_y,density,level`, where `level` is the smallest of `levels` whose
    smallest region contains the bin.

    ---
    :param batch: (required) samples to histogram.
    :param dims: (required) `(k,)` or `(k, l)`, zero-based.
    :param path: (required) output CSV.
    :param levels: (optional) probability levels for 2D tags.
    :param rule: (optional) binning rule when `n_bins` is not given.
    :param prior_log_pdf: (optional) 1D only, evaluated at the bin centres.
    """
    match len(dims):
        case 1:
            centres, density, _ = histogram_1d(batch, dims[0], rule=rule, n_bins=n_bins)
            header = ["bin_center", "density"]
            columns: list[Sequence[object]] = [list(centres), list(density)]
            if prior_log_pdf is not None:
                header.append("prior_density")
                columns.append(list(np.exp(prior_log_pdf(centres))))
            return write_table(path, header, columns)
        case 2:
            bins = None if n_bins is None else (n_bins, n_bins)
            xc, yc, density = histogram_2d(batch, dims[0], dims[1], rule=rule, n_bins=bins)
            tags = smallest_interval_levels(density, levels)
            gx, gy = np.meshgrid(xc, yc, indexing="ij")
            return write_table(
                path,
                ["bin_x", "bin_y", "density", "level"],
                [list(gx.ravel()), list(gy.ravel()), list(density.ravel()), tags],
            )
        case _:
            raise BatonContractViolation(f"Plot data needs 1 or 2 dimensions, got {len(dims)}.")
