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
from typing import Sequence

import numpy as np

from baton.api.client import _BLOG
from baton.exceptions import BatonContractViolation, BatonSampleFileError
from baton.samples.batch import SampleBatch

__all__: Sequence[str] = ("write_samples", "read_samples", "SAMPLE_COLUMNS", "fmt_float")

SAMPLE_COLUMNS: Sequence[str] = ("chain_id", "step", "weight", "log_density")


def fmt_float(value: float) -> str:
    """17 significant digits, enough for an exact round trip of any double."""
    return "%.17g" % value


def write_samples(batch: SampleBatch, path: str | os.PathLike[str]) -> None:
    """
    Write `batch` as CSV with header `chain_id,step,weight,log_density,<names>`.

    :raises: BatonSampleFileError if the file cannot be written.
    """
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([*SAMPLE_COLUMNS, *batch.names])
            for i in range(batch.n):
                writer.writerow(
                    [
                        int(batch.chain_ids[i]),
                        int(batch.step_indices[i]),
                        fmt_float(batch.weights[i]),
                        fmt_float(batch.log_densities[i]),
                        *(fmt_float(v) for v in batch.variates[i]),
                    ]
                )
    except OSError as e:
        raise BatonSampleFileError(f"{path}: cannot write samples ({e}).") from e
    _BLOG.debug("wrote %d sample row(s) to %s", batch.n, path)


def read_samples(path: str | os.PathLike[str]) -> SampleBatch:
    """
    Read a batch written by `write_samples`.

    :raises: BatonSampleFileError on IO failure, a bad header, or a malformed row
        (the message carries the line number).
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as e:
        raise BatonSampleFileError(f"{path}: cannot read samples ({e}).") from e

    if not rows:
        raise BatonSampleFileError(f"{path}: missing header row.")
    header = rows[0]
    if tuple(header[: len(SAMPLE_COLUMNS)]) != tuple(SAMPLE_COLUMNS) or len(header) <= len(
        SAMPLE_COLUMNS
    ):
        raise BatonSampleFileError(
            f"{path}:1: header must start with {','.join(SAMPLE_COLUMNS)} "
            f"followed by at least one variate column."
        )
    names = header[len(SAMPLE_COLUMNS) :]
    dims = len(names)
    width = len(header)

    n = len(rows) - 1
    chain_ids = np.empty(n, dtype=np.int64)
    steps = np.empty(n, dtype=np.int64)
    weights = np.empty(n)
    log_densities = np.empty(n)
    variates = np.empty((n, dims))
    for i, row in enumerate(rows[1:]):
        line = i + 2
        if len(row) != width:
            raise BatonSampleFileError(
                f"{path}:{line}: expected {width} columns, found {len(row)}."
            )
        try:
            chain_ids[i] = int(row[0])
            steps[i] = int(row[1])
            weights[i] = float(row[2])
            log_densities[i] = float(row[3])
            variates[i] = [float(v) for v in row[4:]]
        except ValueError as e:
            raise BatonSampleFileError(f"{path}:{line}: malformed value ({e}).") from e

    try:
        return SampleBatch(variates, weights, log_densities, chain_ids, steps, names)
    except BatonContractViolation as e:
        raise BatonSampleFileError(f"{path}: {e}") from e
