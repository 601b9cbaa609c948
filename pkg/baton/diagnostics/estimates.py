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

import math
from typing import Any, Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.exceptions import BatonContractViolation
from baton.properties.options import BinningRule
from baton.samples import SampleBatch

__all__: Sequence[str] = (
    "weighted_quantile",
    "point_estimates",
    "bin_count",
    "weighted_histogram",
    "marginal_mode",
    "DEFAULT_QUANTILES",
)

FloatArray = npt.NDArray[np.float64]

DEFAULT_QUANTILES: tuple[float, ...] = (0.16, 0.5, 0.84)


def _weights(x: FloatArray, weights: Optional[FloatArray]) -> FloatArray:
    if weights is None:
        return np.ones(x.shape[0])
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != x.shape:
        raise BatonContractViolation("One weight per value is required.")
    return w


def weighted_quantile(
    x: FloatArray, q: float | Sequence[float], weights: Optional[FloatArray] = None
) -> FloatArray:
    """Smallest value whose cumulative weight reaches q * total weight."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] == 0:
        raise BatonContractViolation("Quantiles of an empty sample are undefined.")
    w = _weights(x, weights)
    order = np.argsort(x, kind="stable")
    xs, cw = x[order], np.cumsum(w[order])
    qs = np.atleast_1d(np.asarray(q, dtype=np.float64))
    idx = np.searchsorted(cw, qs * cw[-1], side="left")
    out: FloatArray = xs[np.minimum(idx, xs.shape[0] - 1)]
    return out


def point_estimates(
    batch: SampleBatch, k: int, quantiles: Sequence[float] = DEFAULT_QUANTILES
) -> dict[str, Any]:
    """Weighted mean, median, standard deviation and quantiles of dimension `k`."""
    if batch.n == 0:
        raise BatonContractViolation("Point estimates need a nonempty batch.")
    x, w = batch.variates[:, k], batch.weights
    total = float(np.sum(w))
    mean = float(np.sum(w * x) / total)
    var = float(np.sum(w * (x - mean) ** 2) / (total - 1.0)) if total > 1 else 0.0
    qs = weighted_quantile(x, list(quantiles), w)
    return {
        "mean": mean,
        "median": float(weighted_quantile(x, 0.5, w)[0]),
        "std": math.sqrt(var),
        "quantiles": {f"{q:g}": float(v) for q, v in zip(quantiles, qs)},
    }


def bin_count(
    data: FloatArray,
    rule: BinningRule | str = BinningRule.freedman_diaconis,
    weights: Optional[FloatArray] = None,
) -> int:
    """
    Number of histogram bins for `data`.

    Width-based rules (scott, freedman_diaconis) fall back to sturges when the range,
    the standard deviation or the interquartile range is zero. Weights act as
    frequencies.
    """
    x = np.asarray(data, dtype=np.float64)
    w = _weights(x, weights)
    n = float(np.sum(w))
    if x.shape[0] < 1 or n < 2:
        raise BatonContractViolation("Binning needs at least 2 values.")
    sturges = int(math.ceil(math.log2(n))) + 1
    span = float(np.max(x) - np.min(x))

    match BinningRule(rule):
        case BinningRule.sqrt:
            return int(math.ceil(math.sqrt(n)))
        case BinningRule.sturges:
            return sturges
        case BinningRule.rice:
            return int(math.ceil(2.0 * n ** (1.0 / 3.0)))
        case BinningRule.scott:
            mean = float(np.sum(w * x) / n)
            sd = math.sqrt(float(np.sum(w * (x - mean) ** 2)) / (n - 1))
            width = 3.49 * sd * n ** (-1.0 / 3.0)
        case BinningRule.freedman_diaconis:
            q25, q75 = weighted_quantile(x, [0.25, 0.75], w)
            width = 2.0 * float(q75 - q25) * n ** (-1.0 / 3.0)
    if span <= 0 or width <= 0:
        return sturges
    return max(1, int(math.ceil(round(span / width, 9))))


def weighted_histogram(
    x: FloatArray,
    weights: Optional[FloatArray] = None,
    rule: BinningRule | str = BinningRule.freedman_diaconis,
    n_bins: Optional[int] = None,
    value_range: Optional[tuple[float, float]] = None,
) -> tuple[FloatArray, FloatArray]:
    """(bin weights, bin edges)"""
    x = np.asarray(x, dtype=np.float64)
    w = _weights(x, weights)
    bins = n_bins if n_bins is not None else bin_count(x, rule, w)
    counts, edges = np.histogram(x, bins=bins, range=value_range, weights=w)
    return counts.astype(np.float64), edges


def marginal_mode(
    batch: SampleBatch, k: int, rule: BinningRule | str = BinningRule.freedman_diaconis
) -> float:
    """Centre of the heaviest bin of dimension `k`; the lowest bin index wins ties."""
    if batch.n == 0:
        raise BatonContractViolation("marginal_mode needs a nonempty batch.")
    x = batch.variates[:, k]
    if float(np.min(x)) == float(np.max(x)):
        return float(x[0])
    if batch.total_weight < 2:
        return float(x[int(np.argmax(batch.weights))])
    counts, edges = weighted_histogram(x, batch.weights, rule)
    i = int(np.argmax(counts))
    return float(0.5 * (edges[i] + edges[i + 1]))
