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

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
import numpy.typing as npt
from scipy import linalg

from baton.api._about import PSRF_THRESHOLD
from baton.exceptions import (
    BatonContractViolation,
    BatonDegenerateVariance,
    BatonSingularCovariance,
)

__all__: Sequence[str] = (
    "ConvergenceReport",
    "psrf",
    "mpsrf",
    "convergence_report",
)

FloatArray = npt.NDArray[np.float64]

_SINGULAR_RTOL = 1e-10


@dataclass(frozen=True)
class ConvergenceReport:
    psrf_per_dim: FloatArray
    mpsrf: float
    threshold: float

    @property
    def converged(self) -> bool:
        return bool(np.max(self.psrf_per_dim) <= self.threshold and self.mpsrf <= self.threshold)

    def to_mapping(self) -> dict[str, Any]:
        return {
            "psrf": self.psrf_per_dim,
            "mpsrf": self.mpsrf,
            "converged": self.converged,
            "threshold": self.threshold,
        }


def _stack(chains: Sequence[FloatArray]) -> FloatArray:
    """m x n x d array of the chains truncated to a common length."""
    if len(chains) < 2:
        raise BatonContractViolation("Convergence tests need at least 2 chains.")
    arrays = [np.asarray(c, dtype=np.float64) for c in chains]
    arrays = [a[:, None] if a.ndim == 1 else a for a in arrays]
    n = min(a.shape[0] for a in arrays)
    if n < 2:
        raise BatonContractViolation("Convergence tests need at least 2 samples per chain.")
    return np.stack([a[:n] for a in arrays])


def psrf(chains: Sequence[FloatArray], k: int = 0) -> float:
    """
    Potential scale reduction factor of dimension `k`:

        W = mean of within-chain variances
        V = (n - 1) / n * W + var(chain means)
        R = V / W

    :raises: BatonDegenerateVariance if every chain is constant in dimension `k`.
    """
    x = _stack(chains)[:, :, k]
    n = x.shape[1]
    w = float(np.mean(np.var(x, axis=1, ddof=1)))
    if w <= 0:
        raise BatonDegenerateVariance(f"Within-chain variance of dimension {k + 1} is zero.")
    b_over_n = float(np.var(np.mean(x, axis=1), ddof=1))
    v_hat = (n - 1) / n * w + b_over_n
    return v_hat / w


def mpsrf(chains: Sequence[FloatArray]) -> float:
    """
    Multivariate PSRF: (n - 1) / n + (m + 1) / m * L, with L the largest eigenvalue of
    W^-1 B/n from the pooled within-chain covariance W and the covariance of the
    chain means B/n.

    :raises: BatonSingularCovariance if W is singular.
    """
    x = _stack(chains)
    m, n, d = x.shape
    w = np.mean([np.atleast_2d(np.cov(c, rowvar=False, ddof=1)) for c in x], axis=0)
    b_over_n = np.atleast_2d(np.cov(np.mean(x, axis=1), rowvar=False, ddof=1))
    flat = [k + 1 for k in range(d) if w[k, k] <= 0]
    if flat:
        raise BatonSingularCovariance(f"Within-chain covariance is singular in dims {flat}.")
    sd = np.sqrt(np.diag(w))
    corr_vals, corr_vecs = np.linalg.eigh(w / np.outer(sd, sd))
    null = corr_vals <= _SINGULAR_RTOL * max(float(corr_vals[-1]), 1.0)
    if np.any(null):
        # dims with weight in the null space of the correlation matrix
        loading = np.max(np.abs(corr_vecs[:, null]), axis=1)
        dependent = [k + 1 for k in range(d) if loading[k] > 1e-3]
        raise BatonSingularCovariance(
            f"Within-chain covariance is singular; dims {dependent} are linearly dependent."
        )
    try:
        eigvals = linalg.eigh(b_over_n, w, eigvals_only=True)
    except linalg.LinAlgError as e:
        raise BatonSingularCovariance(
            f"Within-chain covariance is not positive definite in dims 1..{d}."
        ) from e
    lam = float(eigvals[-1])
    return (n - 1) / n + (m + 1) / m * lam


def convergence_report(
    chains: Sequence[FloatArray], threshold: float = PSRF_THRESHOLD
) -> ConvergenceReport:
    x = _stack(chains)
    per_dim = np.array([psrf(list(x), k) for k in range(x.shape[2])])
    return ConvergenceReport(per_dim, mpsrf(list(x)), threshold)
