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

from typing import Any, Callable, Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.diagnostics.estimates import weighted_quantile

__all__: Sequence[str] = (
    "MIN_EXPECTED",
    "pull_histogram",
    "expected_counts",
    "pull_statistics",
)

FloatArray = npt.NDArray[np.float64]
LogPdf = Callable[[FloatArray], FloatArray]

MIN_EXPECTED = 10.0


def pull_histogram(observed: FloatArray, expected: FloatArray) -> FloatArray:
    """(observed - expected) / sqrt(expected) for the bins expecting more than 10 entries."""
    observed = np.asarray(observed, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    keep = expected > MIN_EXPECTED
    pulls: FloatArray = (observed[keep] - expected[keep]) / np.sqrt(expected[keep])
    return pulls


def expected_counts(
    log_pdf: LogPdf, edges: FloatArray, n_total: float, order: int = 8
) -> FloatArray:
    """n_total times the probability of each bin, by Gauss-Legendre quadrature."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    points = mid[:, None] + half[:, None] * nodes[None, :]
    pdf = np.exp(log_pdf(points.ravel())).reshape(points.shape)
    prob = half * (pdf @ weights)
    counts: FloatArray = n_total * prob
    return counts


def pull_statistics(
    x: FloatArray,
    log_pdf: LogPdf,
    weights: Optional[FloatArray] = None,
    n_bins: int = 100,
    coverage: float = 0.99,
) -> dict[str, Any]:
    """
    Bin the central `coverage` fraction of `x` into `n_bins` equal bins and compare
    the bin contents to the counts expected from `log_pdf`.
    """
    x = np.asarray(x, dtype=np.float64)
    w = np.ones(x.shape[0]) if weights is None else np.asarray(weights, dtype=np.float64)
    tail = 0.5 * (1.0 - coverage)
    lo, hi = weighted_quantile(x, [tail, 1.0 - tail], w)
    observed, edges = np.histogram(x, bins=n_bins, range=(float(lo), float(hi)), weights=w)
    expected = expected_counts(log_pdf, edges, float(np.sum(w)))
    pulls = pull_histogram(observed, expected)
    return {
        "n_bins": int(pulls.shape[0]),
        "mean": float(np.mean(pulls)) if pulls.size else float("nan"),
        "sd": float(np.std(pulls, ddof=1)) if pulls.size > 1 else float("nan"),
    }
