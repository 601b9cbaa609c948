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

from typing import Sequence

import numpy as np
import numpy.typing as npt

from baton.exceptions import BatonContractViolation
from baton.properties.options import AutocorrMethod
from baton.samples import SampleBatch

__all__: Sequence[str] = (
    "autocovariance",
    "autocovariance_all",
    "integrated_autocorr_time",
    "ess",
)

FloatArray = npt.NDArray[np.float64]

_SOKAL_WINDOW = 5.0
_MIN_SERIES = 10


def autocovariance(x: FloatArray, tau: int) -> float:
    """c(tau) = 1/(n - tau) * sum_i (x_i - mean)(x_{i+tau} - mean)."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if not 0 <= tau < n:
        raise BatonContractViolation(f"Lag must lie in [0, {n}), got {tau}.")
    d = x - np.mean(x)
    return float(np.dot(d[: n - tau], d[tau:]) / (n - tau))


def autocovariance_all(x: FloatArray) -> FloatArray:
    """`autocovariance` for every lag 0 .. n-1 at once, via a zero-padded FFT."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    d = x - np.mean(x)
    size = 1 << (2 * n - 1).bit_length()
    freq = np.fft.rfft(d, size)
    raw = np.fft.irfft(freq * np.conj(freq), size)[:n]
    acov: FloatArray = raw / (n - np.arange(n))
    return acov


def _geyer(rho: FloatArray) -> float:
    n_pairs = rho.shape[0] // 2
    pairs = rho[: 2 * n_pairs : 2] + rho[1 : 2 * n_pairs : 2]
    negative = np.flatnonzero(pairs < 0)
    if negative.size:
        pairs = pairs[: negative[0]]
    if not pairs.size:
        return 1.0
    pairs = np.minimum.accumulate(pairs)
    return float(2.0 * np.sum(pairs) - 1.0)


def _sokal(rho: FloatArray) -> float:
    taus = 1.0 + 2.0 * np.cumsum(rho[1:])
    windows = np.arange(1, rho.shape[0])
    ok = np.flatnonzero(windows >= _SOKAL_WINDOW * taus)
    tau = taus[ok[0]] if ok.size else taus[-1]
    return float(tau)


def integrated_autocorr_time(
    x: FloatArray, method: AutocorrMethod | str = AutocorrMethod.geyer
) -> float:
    """
    tau = 1 + 2 * sum rho(t), truncated either by Geyer's initial monotone sequence
    (sum of adjacent pairs until the first negative pair, pairs made non-increasing)
    or by Sokal's automatic window (smallest M with M >= 5 * tau(M)).

    Floored at 1. Series shorter than 10 points, or constant, give 1.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] < _MIN_SERIES:
        return 1.0
    acov = autocovariance_all(x)
    if acov[0] <= 0:
        return 1.0
    rho = acov / acov[0]
    match AutocorrMethod(method):
        case AutocorrMethod.geyer:
            tau = _geyer(rho)
        case AutocorrMethod.sokal:
            tau = _sokal(rho)
    return max(tau, 1.0)


def ess(
    batch: SampleBatch, method: AutocorrMethod | str = AutocorrMethod.geyer
) -> FloatArray:
    """
    Effective sample size per dimension, N / tau, with N the total weight.

    The chains are pooled: the repetition-expanded series of all chains are joined in
    chain order and tau is estimated on the joined series. Batches with non-integer
    weights use the Kish size (sum w)^2 / sum w^2 in place of N.
    """
    if batch.n == 0:
        raise BatonContractViolation("ESS needs a nonempty batch.")
    if batch.has_integer_weights():
        series = np.vstack(batch.per_chain_variates())
        n_total = batch.total_weight
    else:
        series = batch.variates
        n_total = float(np.sum(batch.weights) ** 2 / np.sum(batch.weights**2))
    taus = np.array(
        [integrated_autocorr_time(series[:, k], method) for k in range(batch.dims)]
    )
    out: FloatArray = n_total / taus
    return out
